#include <algorithm>
#include <cassert>

#include "pathrep/analysis.hpp"

namespace pathrep {

PathEnumerator::PathEnumerator(const Pmr& r, std::optional<std::size_t> max_length)
    : r_(&r), max_length_(max_length) {
    current_.graph = &r.graph();
}

bool PathEnumerator::next(Path& out) {
    auto depth = [&] { return stack_.size() - 1; };
    auto exhausted_top = [&]() {
        const Frame& f = stack_.back();
        if (max_length_ && depth() >= *max_length_) return true;
        return f.next_edge >= r_->out_edges(f.node).size();
    };

    // Copy the found path out, then charge the backtracking out of it to
    // this emission so the next delay is bounded by the next path's length.
    auto emit = [&](Path& dst) {
        dst = current_;
        while (!stack_.empty() && exhausted_top()) {
            stack_.pop_back();
            if (!stack_.empty()) {
                current_.nodes.pop_back();
                current_.edges.pop_back();
            }
        }
    };

    for (;;) {
        if (stack_.empty()) {
            if (next_source_ >= r_->sources().size()) return false;
            RepNode v = r_->sources()[next_source_++];
            stack_.push_back(Frame{v, 0});
            current_.nodes.assign(1, r_->gamma_node(v));
            current_.edges.clear();
            if (r_->is_target(v)) {
                emit(out);
                return true;
            }
            continue;
        }
        if (exhausted_top()) {
            stack_.pop_back();
            if (!stack_.empty()) {
                current_.nodes.pop_back();
                current_.edges.pop_back();
            }
            continue;
        }
        Frame& f = stack_.back();
        RepEdge e = r_->out_edges(f.node)[f.next_edge++];
        RepNode w = r_->edge(e).tgt;
        stack_.push_back(Frame{w, 0});
        current_.nodes.push_back(r_->gamma_node(w));
        current_.edges.push_back(r_->edge(e).gamma);
        if (r_->is_target(w)) {
            emit(out);
            return true;
        }
    }
}

StratifiedEnumerator::StratifiedEnumerator(const Pmr& r, std::optional<std::size_t> max_length)
    : r_(&r), max_length_(max_length) {
    advance_level();
}

void StratifiedEnumerator::advance_level() {
    if (r_->node_count() == 0) {
        done_ = true;
        return;
    }
    level_pmr_ = length_restricted(*r_, level_);
    level_enum_.emplace(*level_pmr_);
    level_emitted_ = false;
}

bool StratifiedEnumerator::next(Path& out) {
    while (!done_) {
        if (level_enum_ && level_enum_->next(out)) {
            level_emitted_ = true;
            return true;
        }
        empty_streak_ = level_emitted_ ? 0 : empty_streak_ + 1;
        if (empty_streak_ >= std::max<std::size_t>(r_->node_count(), 1) ||
            (max_length_ && level_ >= *max_length_)) {
            done_ = true;
            break;
        }
        ++level_;
        advance_level();
    }
    return false;
}

} // namespace pathrep
