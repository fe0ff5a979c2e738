#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"

namespace strcon {

// Letters are indices into an alphabet; kEps marks an epsilon label.
using Symbol = int;
using Word = std::vector<Symbol>;
constexpr Symbol kEps = -1;

class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols))
    {
        for (std::size_t i = 0; i < symbols_.size(); ++i) {
            if (symbols_[i].empty())
                throw InvalidInput("alphabet: empty symbol");
            if (!index_.emplace(symbols_[i], static_cast<int>(i)).second)
                throw InvalidInput("alphabet: duplicate symbol '" + symbols_[i] + "'");
        }
    }

    int size() const { return static_cast<int>(symbols_.size()); }
    const std::vector<std::string>& symbols() const { return symbols_; }
    const std::string& name(Symbol s) const { return symbols_.at(static_cast<std::size_t>(s)); }

    bool contains(const std::string& s) const { return index_.count(s) != 0; }

    Symbol id(const std::string& s) const
    {
        auto it = index_.find(s);
        if (it == index_.end())
            throw InvalidInput("symbol '" + s + "' not in alphabet");
        return it->second;
    }

    bool single_chars() const
    {
        return std::all_of(symbols_.begin(), symbols_.end(),
                           [](const std::string& s) { return s.size() == 1; });
    }

    bool operator==(const Alphabet& o) const { return symbols_ == o.symbols_; }
    bool operator!=(const Alphabet& o) const { return !(*this == o); }

    void check(const Word& w) const
    {
        for (Symbol s : w)
            if (s < 0 || s >= size())
                throw InvalidInput("word contains a foreign symbol");
    }

    // Plain string when every symbol is one character, else space separated tokens.
    std::string format(const Word& w) const
    {
        std::string out;
        bool sep = !single_chars();
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (sep && i)
                out += ' ';
            out += name(w[i]);
        }
        return out;
    }

    // Whitespace separates tokens; a run without whitespace is split by greedy longest match.
    Word parse(const std::string& text) const
    {
        Word w;
        std::istringstream in(text);
        std::string chunk;
        while (in >> chunk) {
            std::size_t pos = 0;
            while (pos < chunk.size()) {
                std::size_t best = 0;
                Symbol sym = kEps;
                for (std::size_t i = 0; i < symbols_.size(); ++i) {
                    const auto& s = symbols_[i];
                    if (s.size() > best && chunk.compare(pos, s.size(), s) == 0) {
                        best = s.size();
                        sym = static_cast<Symbol>(i);
                    }
                }
                if (sym == kEps)
                    throw InvalidInput("cannot tokenize word '" + text + "'");
                w.push_back(sym);
                pos += best;
            }
        }
        return w;
    }

    Word word(std::initializer_list<std::string> toks) const
    {
        Word w;
        for (const auto& t : toks)
            w.push_back(id(t));
        return w;
    }

private:
    std::vector<std::string> symbols_;
    std::map<std::string, int> index_;
};

// Union keeping the order of the first alphabet, then new symbols of the second.
inline Alphabet merge(const Alphabet& a, const Alphabet& b)
{
    auto syms = a.symbols();
    for (const auto& s : b.symbols())
        if (!a.contains(s))
            syms.push_back(s);
    return Alphabet(syms);
}

inline Word translate(const Word& w, const Alphabet& from, const Alphabet& to)
{
    Word out;
    out.reserve(w.size());
    for (Symbol s : w)
        out.push_back(to.id(from.name(s)));
    return out;
}

} // namespace strcon
