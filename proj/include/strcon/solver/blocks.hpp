#pragma once

#include <vector>

#include "../automata/transducer.hpp"

namespace strcon {

// Block 0 holds the leading eps-input transitions; block j > 0 starts with the transition
// reading the j-th input letter and holds the eps-input transitions after it.
struct RunBlocks {
    std::vector<int> run;
    std::vector<std::pair<int, int>> blocks; // [begin, end) into run
    std::vector<State> boundaryStates;       // state at the end of each block
    std::vector<Word> outputsPerBlock;
};

inline RunBlocks block_decompose(const Transducer& t, const std::vector<int>& run)
{
    run_io(t, run); // throws on an invalid run
    RunBlocks rb;
    rb.run = run;
    int begin = 0;
    State cur = t.base.initial;
    Word out;
    auto close = [&](int end) {
        rb.blocks.push_back({begin, end});
        rb.boundaryStates.push_back(cur);
        rb.outputsPerBlock.push_back(out);
        begin = end;
        out.clear();
    };
    for (std::size_t k = 0; k < run.size(); ++k) {
        const auto& tr = t.base.transitions[run[k]];
        if (tr.label != kEps)
            close(static_cast<int>(k));
        out.insert(out.end(), t.outputs[run[k]].begin(), t.outputs[run[k]].end());
        cur = tr.dst;
    }
    close(static_cast<int>(run.size()));
    return rb;
}

} // namespace strcon
