// Copyright 2026 The lnn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Reverse-mode differentiation over a flat operation tape. TapeRef is the
// scalar: arithmetic on refs appends entries and the recorded values always
// equal what plain doubles would have computed, so a taped run and a value
// run agree exactly. min and max route their derivative to whichever
// operand decided the value, the second on a tie: strictly inside a clamp's
// flat region the derivative is 0, and exactly on the boundary the slope
// side wins, so a descent step can move parameters off the boundary.

#ifndef LNN_TAPE_HPP
#define LNN_TAPE_HPP

#include <cstdint>
#include <vector>

#include "lnn/errors.hpp"

namespace lnn {

class Tape;

struct TapeRef {
    Tape *tape = nullptr;
    std::int64_t idx = -1;
};

class Tape {
   public:
    TapeRef constant(double v) {
        return push(Op::Const, -1, -1, v);
    }

    /// A differentiable leaf; adjoint() reads its derivative after
    /// backward().
    TapeRef param(double v) {
        return push(Op::Param, -1, -1, v);
    }

    TapeRef add(TapeRef a, TapeRef b) {
        return push(Op::Add, a.idx, b.idx, val(a.idx) + val(b.idx));
    }
    TapeRef sub(TapeRef a, TapeRef b) {
        return push(Op::Sub, a.idx, b.idx, val(a.idx) - val(b.idx));
    }
    TapeRef mul(TapeRef a, TapeRef b) {
        return push(Op::Mul, a.idx, b.idx, val(a.idx) * val(b.idx));
    }
    TapeRef div(TapeRef a, TapeRef b) {
        return push(Op::Div, a.idx, b.idx, val(a.idx) / val(b.idx));
    }
    TapeRef min(TapeRef a, TapeRef b) {
        return push(Op::Min, a.idx, b.idx, val(a.idx) < val(b.idx) ? val(a.idx) : val(b.idx));
    }
    TapeRef max(TapeRef a, TapeRef b) {
        return push(Op::Max, a.idx, b.idx, val(a.idx) > val(b.idx) ? val(a.idx) : val(b.idx));
    }

    double value(TapeRef r) const {
        return val(r.idx);
    }

    /// Accumulates d(seed)/d(entry) into every entry at or before the seed.
    void backward(TapeRef seed) {
        if (seed.tape != this || seed.idx < 0) {
            throw InternalError("backward() seed is not on this tape");
        }
        for (auto &e : entries_) {
            e.adj = 0.0;
        }
        entries_[seed.idx].adj = 1.0;
        for (std::int64_t i = seed.idx; i >= 0; --i) {
            const Entry &e = entries_[i];
            if (e.adj == 0.0) {
                continue;
            }
            switch (e.op) {
                case Op::Const:
                case Op::Param:
                    break;
                case Op::Add:
                    entries_[e.a].adj += e.adj;
                    entries_[e.b].adj += e.adj;
                    break;
                case Op::Sub:
                    entries_[e.a].adj += e.adj;
                    entries_[e.b].adj -= e.adj;
                    break;
                case Op::Mul:
                    entries_[e.a].adj += e.adj * entries_[e.b].val;
                    entries_[e.b].adj += e.adj * entries_[e.a].val;
                    break;
                case Op::Div:
                    entries_[e.a].adj += e.adj / entries_[e.b].val;
                    entries_[e.b].adj -=
                        e.adj * entries_[e.a].val / (entries_[e.b].val * entries_[e.b].val);
                    break;
                case Op::Min:
                    entries_[entries_[e.a].val < entries_[e.b].val ? e.a : e.b].adj += e.adj;
                    break;
                case Op::Max:
                    entries_[entries_[e.a].val > entries_[e.b].val ? e.a : e.b].adj += e.adj;
                    break;
            }
        }
    }

    double adjoint(TapeRef r) const {
        return entries_[r.idx].adj;
    }

    std::size_t size() const {
        return entries_.size();
    }

   private:
    enum class Op : std::uint8_t { Const, Param, Add, Sub, Mul, Div, Min, Max };

    struct Entry {
        Op op;
        std::int64_t a;
        std::int64_t b;
        double val;
        double adj = 0.0;
    };

    double val(std::int64_t idx) const {
        return entries_[idx].val;
    }

    TapeRef push(Op op, std::int64_t a, std::int64_t b, double v) {
        entries_.push_back({op, a, b, v, 0.0});
        return {this, static_cast<std::int64_t>(entries_.size()) - 1};
    }

    std::vector<Entry> entries_;
};

inline TapeRef operator+(TapeRef a, TapeRef b) {
    return a.tape->add(a, b);
}
inline TapeRef operator-(TapeRef a, TapeRef b) {
    return a.tape->sub(a, b);
}
inline TapeRef operator*(TapeRef a, TapeRef b) {
    return a.tape->mul(a, b);
}
inline TapeRef operator/(TapeRef a, TapeRef b) {
    return a.tape->div(a, b);
}

inline TapeRef operator+(double a, TapeRef b) {
    return b.tape->add(b.tape->constant(a), b);
}
inline TapeRef operator-(double a, TapeRef b) {
    return b.tape->sub(b.tape->constant(a), b);
}
inline TapeRef operator*(double a, TapeRef b) {
    return b.tape->mul(b.tape->constant(a), b);
}
inline TapeRef operator+(TapeRef a, double b) {
    return a.tape->add(a, a.tape->constant(b));
}
inline TapeRef operator-(TapeRef a, double b) {
    return a.tape->sub(a, a.tape->constant(b));
}
inline TapeRef operator*(TapeRef a, double b) {
    return a.tape->mul(a, a.tape->constant(b));
}
inline TapeRef operator/(TapeRef a, double b) {
    return a.tape->div(a, a.tape->constant(b));
}

inline TapeRef luk_min(TapeRef a, TapeRef b) {
    return a.tape->min(a, b);
}
inline TapeRef luk_max(TapeRef a, TapeRef b) {
    return a.tape->max(a, b);
}
inline TapeRef luk_min(double a, TapeRef b) {
    return b.tape->min(b.tape->constant(a), b);
}
inline TapeRef luk_max(double a, TapeRef b) {
    return b.tape->max(b.tape->constant(a), b);
}
inline TapeRef luk_min(TapeRef a, double b) {
    return a.tape->min(a, a.tape->constant(b));
}
inline TapeRef luk_max(TapeRef a, double b) {
    return a.tape->max(a, a.tape->constant(b));
}

inline double scalar_value(TapeRef r) {
    return r.tape->value(r);
}

}  // namespace lnn

#endif
