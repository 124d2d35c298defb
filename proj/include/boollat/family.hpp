#pragma once

#include "mask.hpp"
#include "rng.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace boollat {

// An ordered, duplicate-free collection of subsets of a common ground set.
// Order is only used for deterministic iteration; membership is set-semantic.
struct Family {
    int n = 0;
    std::vector<SetMask> members;

    bool contains(SetMask m) const {
        return std::find(members.begin(), members.end(), m) != members.end();
    }

    std::size_t size() const { return members.size(); }

    void sort_canonical() { std::sort(members.begin(), members.end()); }

    bool operator==(const Family& o) const { return n == o.n && members == o.members; }
};

struct FamilyFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void validate_family(const Family& f) {
    if (f.n < 0 || f.n > kMaxGroundSize) throw FamilyFormatError("ground size out of range");
    std::set<SetMask> seen;
    for (SetMask m : f.members) {
        if (!mask_in_ground(m, f.n))
            throw FamilyFormatError("member " + mask_to_hex(m) + " outside ground set of size " +
                                    std::to_string(f.n));
        if (!seen.insert(m).second)
            throw FamilyFormatError("duplicate member " + mask_to_hex(m));
    }
}

// Text format shared across the repo: first line "n=<int>", then one member
// per line as lowercase hex (no 0x). Lines starting with '#' are comments.
inline void write_family(std::ostream& os, const Family& f) {
    os << "n=" << f.n << "\n";
    for (SetMask m : f.members) os << mask_to_hex(m) << "\n";
}

inline Family read_family(std::istream& is) {
    Family f;
    std::string line;
    bool have_header = false;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        std::size_t end = line.find_last_not_of(" \t");
        std::string tok = line.substr(start, end - start + 1);
        if (tok[0] == '#') continue;
        if (!have_header) {
            if (tok.rfind("n=", 0) != 0) throw FamilyFormatError("first line must be n=<int>");
            try {
                std::size_t pos = 0;
                f.n = std::stoi(tok.substr(2), &pos);
                if (pos != tok.size() - 2) throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw FamilyFormatError("bad ground size line: '" + tok + "'");
            }
            have_header = true;
            continue;
        }
        f.members.push_back(hex_to_mask(tok));
    }
    if (!have_header) throw FamilyFormatError("missing n=<int> header");
    validate_family(f);
    return f;
}

inline std::string family_to_string(const Family& f) {
    std::ostringstream os;
    write_family(os, f);
    return os.str();
}

inline Family family_from_string(const std::string& s) {
    std::istringstream is(s);
    return read_family(is);
}

inline Family apply_permutation(const Permutation& pi, const Family& f) {
    Family out;
    out.n = f.n;
    out.members.reserve(f.members.size());
    for (SetMask m : f.members) out.members.push_back(apply_permutation(pi, m));
    return out;
}

inline Family intersect_families(const Family& a, const Family& b) {
    if (a.n != b.n) throw std::invalid_argument("families live in different ground sets");
    std::vector<SetMask> sa = a.members, sb = b.members;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    Family out;
    out.n = a.n;
    std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(),
                          std::back_inserter(out.members));
    return out;
}

inline Family merge_families(const Family& a, const Family& b) {
    if (a.n != b.n) throw std::invalid_argument("families live in different ground sets");
    Family out;
    out.n = a.n;
    out.members = a.members;
    out.members.insert(out.members.end(), b.members.begin(), b.members.end());
    out.sort_canonical();
    out.members.erase(std::unique(out.members.begin(), out.members.end()), out.members.end());
    return out;
}

} // namespace boollat
