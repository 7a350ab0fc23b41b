#include "codejudge/tree_edit.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>
#include <vector>

namespace codejudge {

namespace {

struct Flat {
    std::vector<int> labels;  // interned shape labels, postorder
    std::vector<size_t> lml;  // leftmost leaf descendant, postorder index
    std::vector<size_t> keyroots;
};

size_t collect(const SyntaxNode& n, Flat& f,
               std::unordered_map<std::string, int>& intern) {
    size_t leftmost = 0;
    bool first = true;
    for (const auto& c : n.children) {
        size_t cl = collect(c, f, intern);
        if (first) {
            leftmost = cl;
            first = false;
        }
    }
    size_t idx = f.labels.size();
    auto [it, _] = intern.try_emplace(shape_label(n), static_cast<int>(intern.size()));
    f.labels.push_back(it->second);
    f.lml.push_back(n.is_leaf() ? idx : leftmost);
    return f.lml.back();
}

Flat flatten(const SyntaxNode& root, std::unordered_map<std::string, int>& intern) {
    Flat f;
    collect(root, f, intern);
    std::vector<long> last(f.labels.size(), -1);
    for (size_t i = 0; i < f.lml.size(); ++i) last[f.lml[i]] = static_cast<long>(i);
    for (size_t i = 0; i < f.lml.size(); ++i)
        if (last[f.lml[i]] == static_cast<long>(i)) f.keyroots.push_back(i);
    return f;
}

}  // namespace

size_t tree_edit_distance(const SyntaxNode& a, const SyntaxNode& b) {
    std::unordered_map<std::string, int> intern;
    Flat f1 = flatten(a, intern), f2 = flatten(b, intern);
    size_t n1 = f1.labels.size(), n2 = f2.labels.size();
    std::vector<std::vector<size_t>> td(n1, std::vector<size_t>(n2, 0));
    std::vector<std::vector<size_t>> fd;
    for (size_t i : f1.keyroots) {
        for (size_t j : f2.keyroots) {
            size_t li = f1.lml[i], lj = f2.lml[j];
            size_t m = i - li + 2, n = j - lj + 2;
            fd.assign(m, std::vector<size_t>(n, 0));
            for (size_t di = 1; di < m; ++di) fd[di][0] = fd[di - 1][0] + 1;
            for (size_t dj = 1; dj < n; ++dj) fd[0][dj] = fd[0][dj - 1] + 1;
            for (size_t di = 1; di < m; ++di) {
                for (size_t dj = 1; dj < n; ++dj) {
                    size_t ni = li + di - 1, nj = lj + dj - 1;
                    if (f1.lml[ni] == li && f2.lml[nj] == lj) {
                        size_t cost = f1.labels[ni] == f2.labels[nj] ? 0 : 1;
                        fd[di][dj] = std::min({fd[di - 1][dj] + 1, fd[di][dj - 1] + 1,
                                               fd[di - 1][dj - 1] + cost});
                        td[ni][nj] = fd[di][dj];
                    } else {
                        size_t pi = f1.lml[ni] - li, pj = f2.lml[nj] - lj;
                        fd[di][dj] = std::min({fd[di - 1][dj] + 1, fd[di][dj - 1] + 1,
                                               fd[pi][pj] + td[ni][nj]});
                    }
                }
            }
        }
    }
    return td[n1 - 1][n2 - 1];
}

}  // namespace codejudge
