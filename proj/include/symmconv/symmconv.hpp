#pragma once

// Convenience header pulling in the whole library.

#include <symmconv/expr.hpp>
#include <symmconv/meanspace.hpp>
#include <symmconv/integrate.hpp>
#include <symmconv/analysis.hpp>
#include <symmconv/inequalities.hpp>
#include <symmconv/report_json.hpp>
#include <symmconv/corpus.hpp>
