#ifndef DISPSTAT_CASE_RECORD_HPP
#define DISPSTAT_CASE_RECORD_HPP

#include <string>

namespace dispstat {

enum class Outcome { Success, Failure };

/// One executed case of an automated process.
struct CaseRecord {
    std::string process_id;
    std::string case_id;
    double duration_seconds = 0.0;
    Outcome outcome = Outcome::Success;
    std::string raw_status;   // status text as logged, before the binary mapping

    bool operator==(const CaseRecord&) const = default;
};

}  // namespace dispstat

#endif  // DISPSTAT_CASE_RECORD_HPP
