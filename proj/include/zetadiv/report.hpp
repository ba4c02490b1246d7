#pragma once
// Plain-data view of a division certificate for reporting: everything a
// third party needs to re-verify the divisor identity without rerunning the
// pipeline, renderable as deterministic text or JSON carrying identical data.

#include <iosfwd>

#include "zetadiv/divide.hpp"

namespace zetadiv {

struct FieldRef {
    uint32_t p = 0;
    std::vector<uint32_t> modulus;  // {0,1} for the prime field
};

struct ElemRef {
    std::vector<uint32_t> digits;
    std::string text;
};

struct PlaceRef {
    std::string kind;  // "affine" | "ram" | "inf"
    ElemRef x, y;      // affine only
    unsigned ram = 0;  // ramified only
};

struct TermRef {
    PlaceRef place;
    long long mult = 0;
};

struct DivisorRef {
    std::vector<TermRef> terms;
    std::string text;
};

// a coordinate-ring element: coords[b] = coefficients of the y^b coordinate,
// each coefficient a digit vector
struct EntryRef {
    std::vector<std::vector<std::vector<uint32_t>>> coords;
    std::string text;
};

enum class OracleState { Skipped, Pass, Fail };

struct DivisionReport {
    uint64_t seed = 0;
    FieldRef base_field;
    unsigned n = 0, d = 0;
    std::vector<ElemRef> alphas;
    PlaceRef point;
    FieldRef root_field;
    std::vector<ElemRef> roots;
    ElemRef shift;
    FieldRef ext_field;
    DivisorRef D, E, D_base;
    EntryRef entry_1n, entry_1nm1;  // N_{1,n}, N_{1,n-1}
    std::vector<std::vector<long>> poles;
    std::string identity_lhs, identity_rhs;  // divisor strings, work frame
    bool identity_verified = false;
    bool pattern_verified = false;
    OracleState oracle = OracleState::Skipped;
};

DivisionReport build_report(const DivisionCertificate& cert, uint64_t seed,
                            OracleState oracle = OracleState::Skipped);

std::string report_text(const DivisionReport& r);
std::string report_json(const DivisionReport& r);  // serialized, 2-space indent
DivisionReport report_from_json(const std::string& text);

}  // namespace zetadiv
