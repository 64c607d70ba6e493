#ifndef DISPSTAT_TABLE_IO_HPP
#define DISPSTAT_TABLE_IO_HPP

#include <iosfwd>

#include "dispstat/analysis.hpp"

namespace dispstat {

/// Readers for precomputed indicator tables, the inputs of `correlate`.
/// The JSON form is what `analyze --format json` emits; the CSV form is the
/// published table layout `process_id,cv,cr,cd,cmd,ciqr90,gc,oo_os,sr,oo_iqr`
/// with an optional trailing case_count column. A trailing '%' on a numeric
/// cell is tolerated. Throws FatalParseError on malformed input.
IndicatorTable read_indicator_table_json(std::istream& input);
IndicatorTable read_indicator_table_csv(std::istream& input);

}  // namespace dispstat

#endif  // DISPSTAT_TABLE_IO_HPP
