#ifndef DTPPO_MLP_HPP
#define DTPPO_MLP_HPP

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dtppo/rng.hpp"

namespace dtppo {

inline constexpr int kHiddenSize = 64;

// Dense layer, weights row-major (out x in).
struct Linear {
  int in = 0;
  int out = 0;
  std::vector<double> w;
  std::vector<double> b;
};

Linear make_linear(int in, int out);

// x -> tanh(l1 x) -> tanh(l2 .) -> l3 . (linear output)
struct Mlp {
  Linear l1, l2, l3;
};

Mlp make_mlp(int input_dim, int output_dim);

// Separate policy and value networks sharing the observation input.
struct PolicyValueNet {
  Mlp policy;  // obs -> action logits
  Mlp value;   // obs -> scalar

  int obs_dim() const { return policy.l1.in; }
  int action_count() const { return policy.l3.out; }
};

// Gradient (or moment) accumulators shaped like PolicyValueNet.
struct PolicyValueGrads {
  Mlp policy, value;
};

struct TensorRef {
  std::string name;
  std::vector<double>* data;
  int rows, cols;
};

struct ConstTensorRef {
  std::string name;
  const std::vector<double>* data;
  int rows, cols;
};

std::vector<TensorRef> tensor_refs(PolicyValueNet& net);
std::vector<ConstTensorRef> tensor_refs(const PolicyValueNet& net);
std::vector<TensorRef> tensor_refs(PolicyValueGrads& grads);
std::vector<ConstTensorRef> tensor_refs(const PolicyValueGrads& grads);

// Fills w (rows x cols, row-major) with a gain-scaled orthogonal matrix.
void orthogonal_init(std::vector<double>& w, int rows, int cols, double gain, Rng& rng);

// Hidden layers orthogonal with gain sqrt(2), biases zero. The final policy
// layer is exactly zero so the initial logits vanish for every input; the
// final value layer is orthogonal with gain 1.
PolicyValueNet mlp_init(int obs_dim, int action_count, Rng& rng);

PolicyValueGrads zeros_like(const PolicyValueNet& net);
void zero_grads(PolicyValueGrads& grads);

// Per-sample activations kept for the backward pass, plus scratch.
struct MlpWorkspace {
  std::vector<double> x, h1, h2, out;
  std::vector<double> d_h1, d_h2;
};

void mlp_forward(const Mlp& net, std::span<const double> x, MlpWorkspace& ws);

// Accumulates dLoss/dparams into g for one sample, given dLoss/doutput.
void mlp_backward(const Mlp& net, MlpWorkspace& ws, std::span<const double> d_out, Mlp& g);

std::vector<double> policy_logits(const PolicyValueNet& net, std::span<const double> obs);
double value_estimate(const PolicyValueNet& net, std::span<const double> obs);

struct ForwardResult {
  std::vector<double> logits;
  double value = 0.0;
};

ForwardResult mlp_forward(const PolicyValueNet& net, std::span<const double> obs);

double global_grad_norm(const PolicyValueGrads& grads);

// Scales gradients so the global norm does not exceed max_norm.
// Returns the pre-clip norm.
double clip_grad_norm(PolicyValueGrads& grads, double max_norm);

// Parameter snapshots as a JSON record of named tensors with shape headers.
void save_snapshot(const PolicyValueNet& net, std::ostream& out);
PolicyValueNet load_snapshot(std::istream& in);
void save_snapshot_file(const PolicyValueNet& net, const std::string& path);
PolicyValueNet load_snapshot_file(const std::string& path);

}  // namespace dtppo

#endif  // DTPPO_MLP_HPP
