// Copyright 2026 The optport Authors
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

#pragma once

// Internal helper: splits an n-qubit index space into a "local" register (listed
// qubits, first listed = most significant local bit) and the remaining qubits in
// ascending order.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace optport::detail {

class SplitIndex {
   public:
    SplitIndex(int n_qubits, const std::vector<int>& local) : n_qubits_(n_qubits), local_(local) {
        std::vector<bool> used(static_cast<std::size_t>(n_qubits), false);
        for (int q : local) {
            if (q < 0 || q >= n_qubits) {
                throw std::invalid_argument("qubit index " + std::to_string(q) + " out of range for " +
                                            std::to_string(n_qubits) + " qubits");
            }
            if (used[static_cast<std::size_t>(q)]) {
                throw std::invalid_argument("qubit index " + std::to_string(q) + " listed twice");
            }
            used[static_cast<std::size_t>(q)] = true;
        }
        for (int q = 0; q < n_qubits; ++q) {
            if (!used[static_cast<std::size_t>(q)]) rest_.push_back(q);
        }
    }

    std::size_t local_dim() const { return std::size_t{1} << local_.size(); }
    std::size_t rest_dim() const { return std::size_t{1} << rest_.size(); }
    const std::vector<int>& rest() const { return rest_; }

    std::size_t full(std::size_t local, std::size_t rest) const {
        std::size_t out = 0;
        const std::size_t k = local_.size();
        for (std::size_t i = 0; i < k; ++i) {
            if ((local >> (k - 1 - i)) & 1U) out |= bit(local_[i]);
        }
        const std::size_t r = rest_.size();
        for (std::size_t i = 0; i < r; ++i) {
            if ((rest >> (r - 1 - i)) & 1U) out |= bit(rest_[i]);
        }
        return out;
    }

   private:
    std::size_t bit(int q) const { return std::size_t{1} << (n_qubits_ - 1 - q); }

    int n_qubits_;
    std::vector<int> local_;
    std::vector<int> rest_;
};

}  // namespace optport::detail
