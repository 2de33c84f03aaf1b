// schmidt.hpp: Schmidt decomposition across a channel bipartition
#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "swapsim/photon_state.hpp"

namespace swapsim {

struct SchmidtDecomposition {
    std::vector<double> coefficients;  // nonnegative, descending, sum of squares = 1
    double entropy = 0.0;              // -sum lambda^2 ln lambda^2, in nats
};

// Singular-value form of a normalized pure state across the bipartition
// (left | complement). The entropy of the squared coefficients quantifies
// the frequency entanglement between the two sides.
inline SchmidtDecomposition schmidt_decompose(const PhotonState& state,
                                              const std::set<ChannelId>& left) {
    if (!state.is_normalized())
        throw std::invalid_argument("schmidt_decompose: state must be normalized");
    if (left.empty())
        throw std::invalid_argument("schmidt_decompose: left partition must be nonempty");
    for (ChannelId id : left) {
        if (!state.has_channel(id))
            throw std::invalid_argument("schmidt_decompose: left partition names channel " +
                                        std::string(to_string(id)) + " not in state");
    }
    if (left.size() >= state.channel_count())
        throw std::invalid_argument("schmidt_decompose: left partition must be a proper subset");

    std::vector<bool> is_left(state.channel_count());
    for (std::size_t i = 0; i < state.channel_count(); ++i)
        is_left[i] = left.count(state.channels()[i].id) > 0;

    // Compress to the sub-tuples that actually occur; absent rows/columns are
    // zero and do not change the singular values.
    std::map<BinTuple, Eigen::Index> rows, cols;
    for (const auto& [tuple, amp] : state.amplitudes()) {
        BinTuple lt, rt;
        for (std::size_t i = 0; i < tuple.size(); ++i)
            (is_left[i] ? lt : rt).push_back(tuple[i]);
        rows.emplace(std::move(lt), 0);
        cols.emplace(std::move(rt), 0);
    }
    Eigen::Index r = 0, c = 0;
    for (auto& [key, idx] : rows) idx = r++;
    for (auto& [key, idx] : cols) idx = c++;

    Eigen::MatrixXcd coeff = Eigen::MatrixXcd::Zero(r, c);
    for (const auto& [tuple, amp] : state.amplitudes()) {
        BinTuple lt, rt;
        for (std::size_t i = 0; i < tuple.size(); ++i)
            (is_left[i] ? lt : rt).push_back(tuple[i]);
        coeff(rows.at(lt), cols.at(rt)) = amp;
    }

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(coeff);
    const Eigen::VectorXd sv = svd.singularValues();

    SchmidtDecomposition result;
    result.coefficients.assign(sv.data(), sv.data() + sv.size());
    // Analytically vanishing singular values surface as epsilon-scale noise;
    // trimmed so the list length equals the Schmidt rank.
    if (!result.coefficients.empty()) {
        const double floor = kPruneRel * result.coefficients.front();
        while (!result.coefficients.empty() && result.coefficients.back() <= floor)
            result.coefficients.pop_back();
    }
    for (double lambda : result.coefficients) {
        const double p = lambda * lambda;
        if (p > 0.0) result.entropy -= p * std::log(p);
    }
    return result;
}

}  // namespace swapsim
