#pragma once

#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "alphabet.hpp"

namespace strcon {

inline bool is_subword(const Word& u, const Word& v)
{
    std::size_t j = 0;
    for (std::size_t i = 0; i < v.size() && j < u.size(); ++i)
        if (v[i] == u[j])
            ++j;
    return j == u.size();
}

// For an embedding of w into the shuffle of U: which component each letter of w goes to,
// and where inside that component it lands.
struct WitnessingProjection {
    std::vector<Word> parts;               // pi(i), a subword of U[i]
    std::vector<int> partition;            // per position of w
    std::vector<std::vector<int>> positions; // per component, indices into U[i]
};

// w in Shuffle(U) exactly; returns the owner of each position.
inline std::optional<std::vector<int>> shuffle_exact_member(const Word& w, const std::vector<Word>& U)
{
    std::size_t total = 0;
    for (const auto& u : U)
        total += u.size();
    if (total != w.size())
        return std::nullopt;
    const std::size_t k = U.size();
    std::vector<int> cur(k, 0), owner;
    std::set<std::vector<int>> failed;
    std::function<bool(std::size_t)> go = [&](std::size_t p) {
        if (p == w.size())
            return true;
        if (failed.count(cur))
            return false;
        for (std::size_t i = 0; i < k; ++i) {
            if (cur[i] < static_cast<int>(U[i].size()) && U[i][cur[i]] == w[p]) {
                ++cur[i];
                owner.push_back(static_cast<int>(i));
                if (go(p + 1))
                    return true;
                owner.pop_back();
                --cur[i];
            }
        }
        failed.insert(cur);
        return false;
    };
    if (!go(0))
        return std::nullopt;
    return owner;
}

// Search for subwords of U whose shuffle is w. Each letter of w is routed to a component
// and matched at the earliest fitting position at or after that component's cursor;
// taking the earliest match never hurts because the skipped letters are simply unused.
// Failed cursor tuples prune every tuple that dominates them at the same position.
inline std::optional<WitnessingProjection> shuffle_embed(const Word& w, const std::vector<Word>& U)
{
    const std::size_t k = U.size();
    if (w.empty()) {
        WitnessingProjection p;
        p.parts.assign(k, Word{});
        p.positions.assign(k, {});
        return p;
    }
    if (k == 0)
        return std::nullopt;
    std::vector<int> cur(k, 0), owner, at;
    std::vector<std::vector<std::vector<int>>> failed(w.size());
    auto dominated = [&](std::size_t p) {
        for (const auto& f : failed[p]) {
            bool le = true;
            for (std::size_t i = 0; i < k && le; ++i)
                le = f[i] <= cur[i];
            if (le)
                return true;
        }
        return false;
    };
    std::function<bool(std::size_t)> go = [&](std::size_t p) {
        if (p == w.size())
            return true;
        if (dominated(p))
            return false;
        for (std::size_t i = 0; i < k; ++i) {
            int j = cur[i];
            while (j < static_cast<int>(U[i].size()) && U[i][j] != w[p])
                ++j;
            if (j >= static_cast<int>(U[i].size()))
                continue;
            int saved = cur[i];
            cur[i] = j + 1;
            owner.push_back(static_cast<int>(i));
            at.push_back(j);
            if (go(p + 1))
                return true;
            owner.pop_back();
            at.pop_back();
            cur[i] = saved;
        }
        failed[p].push_back(cur);
        return false;
    };
    if (!go(0))
        return std::nullopt;
    WitnessingProjection proj;
    proj.parts.assign(k, Word{});
    proj.positions.assign(k, {});
    proj.partition = owner;
    for (std::size_t p = 0; p < w.size(); ++p) {
        proj.parts[owner[p]].push_back(w[p]);
        proj.positions[owner[p]].push_back(at[p]);
    }
    return proj;
}

// Both clauses of the definition, checked literally.
inline bool is_witnessing_projection(const Word& w, const std::vector<Word>& U,
                                     const WitnessingProjection& proj)
{
    if (proj.parts.size() != U.size() || proj.partition.size() != w.size())
        return false;
    std::vector<Word> spelled(U.size());
    for (std::size_t p = 0; p < w.size(); ++p) {
        int i = proj.partition[p];
        if (i < 0 || i >= static_cast<int>(U.size()))
            return false;
        spelled[i].push_back(w[p]);
    }
    for (std::size_t i = 0; i < U.size(); ++i)
        if (spelled[i] != proj.parts[i] || !is_subword(proj.parts[i], U[i]))
            return false;
    return true;
}

// Leftmost positions of each part inside its component.
inline std::vector<std::vector<int>> leftmost_positions(const std::vector<Word>& U,
                                                        const std::vector<Word>& parts)
{
    std::vector<std::vector<int>> pos(U.size());
    for (std::size_t i = 0; i < U.size(); ++i) {
        std::size_t j = 0;
        for (Symbol s : parts[i]) {
            while (j < U[i].size() && U[i][j] != s)
                ++j;
            if (j == U[i].size())
                throw InvalidInput("projection part is not a subword of its component");
            pos[i].push_back(static_cast<int>(j++));
        }
    }
    return pos;
}

// A w' in Shuffle(U) with w a subword of w': unused letters of each component are inserted
// just before the next letter that component contributes, and the rest appended at the end.
inline Word superword_construct(const Word& w, const std::vector<Word>& U, const WitnessingProjection& proj)
{
    if (!is_witnessing_projection(w, U, proj))
        throw InvalidInput("superword_construct: invalid projection");
    auto pos = proj.positions.size() == U.size() ? proj.positions : leftmost_positions(U, proj.parts);
    for (std::size_t i = 0; i < U.size(); ++i) {
        if (pos[i].size() != proj.parts[i].size())
            throw InvalidInput("superword_construct: positions do not match parts");
        for (std::size_t j = 0; j < pos[i].size(); ++j)
            if (pos[i][j] < 0 || pos[i][j] >= static_cast<int>(U[i].size()) ||
                U[i][pos[i][j]] != proj.parts[i][j] || (j && pos[i][j] <= pos[i][j - 1]))
                throw InvalidInput("superword_construct: positions do not match parts");
    }
    Word out;
    std::vector<std::size_t> cursor(U.size(), 0), used(U.size(), 0);
    for (std::size_t p = 0; p < w.size(); ++p) {
        int i = proj.partition[p];
        std::size_t target = static_cast<std::size_t>(pos[i][used[i]++]);
        while (cursor[i] < target)
            out.push_back(U[i][cursor[i]++]);
        out.push_back(U[i][cursor[i]++]);
    }
    for (std::size_t i = 0; i < U.size(); ++i)
        while (cursor[i] < U[i].size())
            out.push_back(U[i][cursor[i]++]);
    return out;
}

// Brute force over all routings of w's letters; test oracle for small inputs.
inline bool shuffle_embed_oracle(const Word& w, const std::vector<Word>& U)
{
    if (w.size() > 8 || U.size() > 3)
        throw InvalidInput("shuffle_embed_oracle: limited to |w| <= 8 and |U| <= 3");
    if (U.empty())
        return w.empty();
    std::size_t k = U.size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < w.size(); ++i)
        total *= k;
    // each routing is checked by greedy subword matching per component
    for (std::size_t code = 0; code < total; ++code) {
        std::size_t cur[3] = {0, 0, 0};
        std::size_t c = code;
        bool ok = true;
        for (std::size_t p = 0; p < w.size() && ok; ++p) {
            const std::size_t i = c % k;
            c /= k;
            const Word& u = U[i];
            while (cur[i] < u.size() && u[cur[i]] != w[p])
                ++cur[i];
            ok = cur[i]++ < u.size();
        }
        if (ok)
            return true;
    }
    return false;
}

} // namespace strcon
