#include "dtppo/mlp.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace dtppo {

namespace {

// y = W x + b
void linear_forward(const Linear& l, const double* x, double* y) {
  const double* w = l.w.data();
  for (int i = 0; i < l.out; ++i) {
    const double* row = w + static_cast<std::size_t>(i) * l.in;
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    int j = 0;
    for (; j + 4 <= l.in; j += 4) {
      s0 += row[j] * x[j];
      s1 += row[j + 1] * x[j + 1];
      s2 += row[j + 2] * x[j + 2];
      s3 += row[j + 3] * x[j + 3];
    }
    for (; j < l.in; ++j) s0 += row[j] * x[j];
    y[i] = l.b[i] + ((s0 + s1) + (s2 + s3));
  }
}

// Accumulates dW += dy x^T, db += dy; writes dx = W^T dy when dx != nullptr.
void linear_backward(const Linear& l, const double* x, const double* dy, Linear& g,
                     double* dx) {
  if (dx != nullptr) std::memset(dx, 0, sizeof(double) * l.in);
  const double* w = l.w.data();
  double* gw = g.w.data();
  for (int i = 0; i < l.out; ++i) {
    const double d = dy[i];
    g.b[i] += d;
    const std::size_t off = static_cast<std::size_t>(i) * l.in;
    double* grow = gw + off;
    const double* wrow = w + off;
    if (dx != nullptr) {
      for (int j = 0; j < l.in; ++j) {
        grow[j] += d * x[j];
        dx[j] += d * wrow[j];
      }
    } else {
      for (int j = 0; j < l.in; ++j) grow[j] += d * x[j];
    }
  }
}

void tensor_refs_of(const std::string& prefix, Mlp& net, std::vector<TensorRef>& refs) {
  refs.push_back({prefix + ".l1.w", &net.l1.w, net.l1.out, net.l1.in});
  refs.push_back({prefix + ".l1.b", &net.l1.b, net.l1.out, 1});
  refs.push_back({prefix + ".l2.w", &net.l2.w, net.l2.out, net.l2.in});
  refs.push_back({prefix + ".l2.b", &net.l2.b, net.l2.out, 1});
  refs.push_back({prefix + ".l3.w", &net.l3.w, net.l3.out, net.l3.in});
  refs.push_back({prefix + ".l3.b", &net.l3.b, net.l3.out, 1});
}

void tensor_refs_of(const std::string& prefix, const Mlp& net,
                    std::vector<ConstTensorRef>& refs) {
  refs.push_back({prefix + ".l1.w", &net.l1.w, net.l1.out, net.l1.in});
  refs.push_back({prefix + ".l1.b", &net.l1.b, net.l1.out, 1});
  refs.push_back({prefix + ".l2.w", &net.l2.w, net.l2.out, net.l2.in});
  refs.push_back({prefix + ".l2.b", &net.l2.b, net.l2.out, 1});
  refs.push_back({prefix + ".l3.w", &net.l3.w, net.l3.out, net.l3.in});
  refs.push_back({prefix + ".l3.b", &net.l3.b, net.l3.out, 1});
}

}  // namespace

Linear make_linear(int in, int out) {
  if (in < 1 || out < 1) throw std::invalid_argument("make_linear: dims must be >= 1");
  Linear l;
  l.in = in;
  l.out = out;
  l.w.assign(static_cast<std::size_t>(in) * out, 0.0);
  l.b.assign(out, 0.0);
  return l;
}

Mlp make_mlp(int input_dim, int output_dim) {
  Mlp net;
  net.l1 = make_linear(input_dim, kHiddenSize);
  net.l2 = make_linear(kHiddenSize, kHiddenSize);
  net.l3 = make_linear(kHiddenSize, output_dim);
  return net;
}

std::vector<TensorRef> tensor_refs(PolicyValueNet& net) {
  std::vector<TensorRef> refs;
  tensor_refs_of("policy", net.policy, refs);
  tensor_refs_of("value", net.value, refs);
  return refs;
}

std::vector<ConstTensorRef> tensor_refs(const PolicyValueNet& net) {
  std::vector<ConstTensorRef> refs;
  tensor_refs_of("policy", net.policy, refs);
  tensor_refs_of("value", net.value, refs);
  return refs;
}

std::vector<TensorRef> tensor_refs(PolicyValueGrads& grads) {
  std::vector<TensorRef> refs;
  tensor_refs_of("policy", grads.policy, refs);
  tensor_refs_of("value", grads.value, refs);
  return refs;
}

std::vector<ConstTensorRef> tensor_refs(const PolicyValueGrads& grads) {
  std::vector<ConstTensorRef> refs;
  tensor_refs_of("policy", grads.policy, refs);
  tensor_refs_of("value", grads.value, refs);
  return refs;
}

void orthogonal_init(std::vector<double>& w, int rows, int cols, double gain, Rng& rng) {
  if (static_cast<std::size_t>(rows) * cols != w.size())
    throw std::invalid_argument("orthogonal_init: shape mismatch");

  // Orthonormalize the short side of a Gaussian draw (modified Gram-Schmidt,
  // second pass for accuracy), so W W^T = gain^2 I for wide matrices and
  // W^T W = gain^2 I for tall ones.
  const bool tall = rows >= cols;
  const int n = tall ? rows : cols;   // vector length
  const int k = tall ? cols : rows;   // number of vectors
  std::vector<std::vector<double>> q(k, std::vector<double>(n));
  for (auto& v : q)
    for (double& x : v) x = rng.normal();

  for (int pass = 0; pass < 2; ++pass) {
    for (int j = 0; j < k; ++j) {
      for (int prev = 0; prev < j; ++prev) {
        double dot = 0.0;
        for (int i = 0; i < n; ++i) dot += q[prev][i] * q[j][i];
        for (int i = 0; i < n; ++i) q[j][i] -= dot * q[prev][i];
      }
      double norm = 0.0;
      for (int i = 0; i < n; ++i) norm += q[j][i] * q[j][i];
      norm = std::sqrt(norm);
      if (norm < 1e-12) throw std::runtime_error("orthogonal_init: degenerate draw");
      for (int i = 0; i < n; ++i) q[j][i] /= norm;
    }
  }

  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      w[static_cast<std::size_t>(r) * cols + c] = gain * (tall ? q[c][r] : q[r][c]);
}

PolicyValueNet mlp_init(int obs_dim, int action_count, Rng& rng) {
  if (obs_dim < 1 || action_count < 1)
    throw std::invalid_argument("mlp_init: dims must be >= 1");

  PolicyValueNet net;
  net.policy = make_mlp(obs_dim, action_count);
  net.value = make_mlp(obs_dim, 1);

  const double hidden_gain = std::sqrt(2.0);
  orthogonal_init(net.policy.l1.w, kHiddenSize, obs_dim, hidden_gain, rng);
  orthogonal_init(net.policy.l2.w, kHiddenSize, kHiddenSize, hidden_gain, rng);
  // final policy layer stays all-zero: initial logits are the zero vector
  orthogonal_init(net.value.l1.w, kHiddenSize, obs_dim, hidden_gain, rng);
  orthogonal_init(net.value.l2.w, kHiddenSize, kHiddenSize, hidden_gain, rng);
  orthogonal_init(net.value.l3.w, 1, kHiddenSize, 1.0, rng);
  return net;
}

PolicyValueGrads zeros_like(const PolicyValueNet& net) {
  PolicyValueGrads g;
  g.policy = make_mlp(net.policy.l1.in, net.policy.l3.out);
  g.value = make_mlp(net.value.l1.in, 1);
  return g;
}

void zero_grads(PolicyValueGrads& grads) {
  for (auto& ref : tensor_refs(grads))
    std::fill(ref.data->begin(), ref.data->end(), 0.0);
}

void mlp_forward(const Mlp& net, std::span<const double> x, MlpWorkspace& ws) {
  if (static_cast<int>(x.size()) != net.l1.in)
    throw std::invalid_argument("mlp_forward: observation dimension mismatch");
  ws.x.assign(x.begin(), x.end());
  ws.h1.resize(net.l1.out);
  ws.h2.resize(net.l2.out);
  ws.out.resize(net.l3.out);

  linear_forward(net.l1, ws.x.data(), ws.h1.data());
  for (double& v : ws.h1) v = std::tanh(v);
  linear_forward(net.l2, ws.h1.data(), ws.h2.data());
  for (double& v : ws.h2) v = std::tanh(v);
  linear_forward(net.l3, ws.h2.data(), ws.out.data());
}

void mlp_backward(const Mlp& net, MlpWorkspace& ws, std::span<const double> d_out, Mlp& g) {
  if (static_cast<int>(d_out.size()) != net.l3.out)
    throw std::invalid_argument("mlp_backward: output gradient dimension mismatch");
  ws.d_h1.resize(net.l1.out);
  ws.d_h2.resize(net.l2.out);

  linear_backward(net.l3, ws.h2.data(), d_out.data(), g.l3, ws.d_h2.data());
  for (int i = 0; i < net.l2.out; ++i) ws.d_h2[i] *= 1.0 - ws.h2[i] * ws.h2[i];
  linear_backward(net.l2, ws.h1.data(), ws.d_h2.data(), g.l2, ws.d_h1.data());
  for (int i = 0; i < net.l1.out; ++i) ws.d_h1[i] *= 1.0 - ws.h1[i] * ws.h1[i];
  linear_backward(net.l1, ws.x.data(), ws.d_h1.data(), g.l1, nullptr);
}

std::vector<double> policy_logits(const PolicyValueNet& net, std::span<const double> obs) {
  MlpWorkspace ws;
  mlp_forward(net.policy, obs, ws);
  return ws.out;
}

double value_estimate(const PolicyValueNet& net, std::span<const double> obs) {
  MlpWorkspace ws;
  mlp_forward(net.value, obs, ws);
  return ws.out[0];
}

ForwardResult mlp_forward(const PolicyValueNet& net, std::span<const double> obs) {
  ForwardResult r;
  r.logits = policy_logits(net, obs);
  r.value = value_estimate(net, obs);
  return r;
}

double global_grad_norm(const PolicyValueGrads& grads) {
  double sq = 0.0;
  for (const auto& ref : tensor_refs(grads))
    for (double v : *ref.data) sq += v * v;
  return std::sqrt(sq);
}

double clip_grad_norm(PolicyValueGrads& grads, double max_norm) {
  const double norm = global_grad_norm(grads);
  if (norm > max_norm) {
    const double scale = max_norm / norm;
    for (auto& ref : tensor_refs(grads))
      for (double& v : *ref.data) v *= scale;
  }
  return norm;
}

void save_snapshot(const PolicyValueNet& net, std::ostream& out) {
  nlohmann::json j;
  j["format"] = "dtppo-mlp-v1";
  j["obs_dim"] = net.obs_dim();
  j["action_count"] = net.action_count();
  nlohmann::json tensors = nlohmann::json::object();
  for (const auto& ref : tensor_refs(net)) {
    tensors[ref.name] = {{"shape", {ref.rows, ref.cols}}, {"data", *ref.data}};
  }
  j["tensors"] = std::move(tensors);
  out << j.dump();
}

PolicyValueNet load_snapshot(std::istream& in) {
  nlohmann::json j = nlohmann::json::parse(in);
  if (j.value("format", "") != std::string("dtppo-mlp-v1"))
    throw std::runtime_error("load_snapshot: unrecognized format");
  PolicyValueNet net;
  net.policy = make_mlp(j.at("obs_dim").get<int>(), j.at("action_count").get<int>());
  net.value = make_mlp(j.at("obs_dim").get<int>(), 1);
  for (auto& ref : tensor_refs(net)) {
    const auto& t = j.at("tensors").at(ref.name);
    const auto shape = t.at("shape").get<std::vector<int>>();
    if (shape.size() != 2 || shape[0] != ref.rows || shape[1] != ref.cols)
      throw std::runtime_error("load_snapshot: shape mismatch for " + ref.name);
    auto data = t.at("data").get<std::vector<double>>();
    if (data.size() != ref.data->size())
      throw std::runtime_error("load_snapshot: data size mismatch for " + ref.name);
    *ref.data = std::move(data);
  }
  return net;
}

void save_snapshot_file(const PolicyValueNet& net, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_snapshot_file: cannot open " + path);
  save_snapshot(net, out);
  if (!out) throw std::runtime_error("save_snapshot_file: write failed for " + path);
}

PolicyValueNet load_snapshot_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_snapshot_file: cannot open " + path);
  return load_snapshot(in);
}

}  // namespace dtppo
