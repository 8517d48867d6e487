#include "duc/builtins.h"

#include <stdexcept>

namespace duc {

namespace {

struct Entry {
    const char *name;
    const char *table;
    LabelConvention conv;
};

constexpr Entry kEntries[] = {
    {"table1", "33 23 13/31 12 21/32 11 22", LabelConvention::offset_one},
    {"U1", "12 21/11 22", LabelConvention::offset_one},
    {"U2", "21 12/22 11", LabelConvention::offset_one},
    {"C1", "32 22 13/23 33 12/21 31 11", LabelConvention::offset_one},
    {"C2", "13 23 33/31 12 22/32 21 11", LabelConvention::offset_one},
    {"I1", "11 31 21/12 23 33/13 22 32", LabelConvention::offset_one},
    {"I2", "11 21 31/12 32 22/13 23 33", LabelConvention::offset_one},
    {"E1", "32 22 13/31 21 12/23 33 11", LabelConvention::offset_one},
    {"E2", "11 32 21/33 13 23/12 31 22", LabelConvention::offset_one},
    {"V1", "11 25 34 43 52/22 31 45 54 13/33 42 51 15 24/44 53 12 21 35/55 14 23 32 41",
     LabelConvention::offset_one},
    {"V2", "11 55 34 23 42/52 31 25 44 13/33 22 41 15 54/24 43 12 51 35/45 14 53 32 21",
     LabelConvention::offset_one},
    {"z4", "33 41 13 21/14 22 34 42/31 43 11 23/12 24 32 44", LabelConvention::vacuum},
    {"mols7",
     "11 22 33 44 55 66 77/24 16 41 35 67 73 52/36 45 12 23 71 57 64/47 51 65 72 26 34 13/"
     "53 37 76 61 14 42 25/62 74 27 56 43 15 31/75 63 54 17 32 21 46",
     LabelConvention::offset_one},
};

}  // namespace

PermMap builtin_map(const std::string &name) {
    for (const auto &e : kEntries) {
        if (name == e.name) {
            return parse_perm_map(e.table, e.conv);
        }
    }
    if (name == "z3") {
        return PermMap::from_function(3, [](int a, int b) { return std::pair{(a + b) % 3, (a + 2 * b) % 3}; });
    }
    if (name == "swap") {
        return PermMap::swap(3);
    }
    throw std::invalid_argument("unknown builtin '" + name + "'");
}

std::vector<std::string> builtin_names() {
    std::vector<std::string> out;
    for (const auto &e : kEntries) {
        out.emplace_back(e.name);
    }
    out.emplace_back("z3");
    out.emplace_back("swap");
    return out;
}

}  // namespace duc
