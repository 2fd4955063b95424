// Walks a few generated families and prints the solver value next to the
// closed-form oracle.

#include <cstdio>

#include "rzf/exact.hpp"
#include "rzf/families.hpp"

int main() {
    using namespace rzf;
    struct Row {
        const char* name;
        FamilySpec spec;
    };
    std::vector<Row> rows;
    {
        FamilySpec s;
        s.kind = FamilyKind::bipath;
        s.n = 8;
        rows.push_back({"bidirected path P_8, endpoint start", s});
    }
    {
        FamilySpec s;
        s.kind = FamilyKind::bicycle;
        s.n = 9;
        s.k = 2;
        s.p = 1.0;
        s.q = 3.0;
        rows.push_back({"bidirected cycle C_9 (p=1, q=3), 2-arc start", s});
    }
    {
        FamilySpec s;
        s.kind = FamilyKind::weighted_star;
        s.leaf_in = {1, 2, 3};
        s.start_leaf = 3;
        rows.push_back({"weighted star a=(1,2,3), best leaf start", s});
    }
    {
        FamilySpec s;
        s.kind = FamilyKind::sun;
        s.n = 4;
        rows.push_back({"sun graph, 4 cycle vertices, center start", s});
    }
    {
        FamilySpec s;
        s.kind = FamilyKind::quad_construction;
        s.m = 3;
        rows.push_back({"quadratic-growth construction (m=3)", s});
    }

    std::printf("%-50s %12s %12s\n", "family", "solver", "oracle");
    for (const Row& row : rows) {
        GeneratedGraph gen = generate(row.spec);
        EptValue dp = exact_ept(gen.graph, gen.start);
        std::printf("%-50s %12.6f %12.6f\n", row.name, dp.value, gen.oracle.value);
    }
    return 0;
}
