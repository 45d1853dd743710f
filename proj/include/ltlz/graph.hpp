#pragma once

#include <algorithm>
#include <utility>
#include <vector>

namespace ltlz {

// Strongly connected components, iterative Tarjan. Component ids come out
// in reverse topological order: an edge u->v implies comp[u] >= comp[v].
inline std::vector<int> scc(const std::vector<std::vector<int>>& adj, int& count) {
    int n = static_cast<int>(adj.size()), idx = 0;
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1), stack;
    std::vector<char> on(n, 0);
    std::vector<std::pair<int, size_t>> call;
    count = 0;
    for (int root = 0; root < n; ++root) {
        if (index[root] >= 0) continue;
        call.push_back({root, 0});
        index[root] = low[root] = idx++;
        stack.push_back(root);
        on[root] = 1;
        while (!call.empty()) {
            auto& [v, i] = call.back();
            if (i < adj[v].size()) {
                int w = adj[v][i++];
                if (index[w] < 0) {
                    index[w] = low[w] = idx++;
                    stack.push_back(w);
                    on[w] = 1;
                    call.push_back({w, 0});
                } else if (on[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on[w] = 0;
                    comp[w] = count;
                } while (w != v);
                ++count;
            }
            int done = v;
            call.pop_back();
            if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
        }
    }
    return comp;
}

}  // namespace ltlz
