// Copyright 2026 The qcdmmw Authors
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

#include "qcdmmw/channels.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <fmt/format.h>

#include "qcdmmw/errors.h"

namespace qcdmmw {

namespace {

void RequireShape(const CMatrix& m, Index rows, Index cols,
                  const std::string& what) {
  if (m.rows() != rows || m.cols() != cols) {
    throw InputError(fmt::format("{}: expected a {}x{} matrix, got {}x{}",
                                 what, rows, cols, m.rows(), m.cols()));
  }
}

void RequireResidual(const std::string& check, double residual, double tol,
                     const std::string& what) {
  if (!(residual <= tol)) {
    throw ValidationError(
        check, residual,
        fmt::format("{}: {} check failed with residual {:.6g} (tolerance "
                    "{:.1e})",
                    what, check, residual, tol));
  }
}

}  // namespace

const char* ChannelKindName(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::kStinespring:
      return "stinespring";
    case ChannelKind::kKraus:
      return "kraus";
    case ChannelKind::kUnitary:
      return "unitary";
    case ChannelKind::kConstant:
      return "constant";
  }
  return "unknown";
}

ChannelKind ParseChannelKind(const std::string& name) {
  if (name == "stinespring") return ChannelKind::kStinespring;
  if (name == "kraus") return ChannelKind::kKraus;
  if (name == "unitary") return ChannelKind::kUnitary;
  if (name == "constant") return ChannelKind::kConstant;
  throw InputError(fmt::format(
      "unknown channel kind '{}' (expected stinespring, kraus, unitary or "
      "constant)",
      name));
}

double CheckIsometry(const CMatrix& a) {
  return (a.adjoint() * a - CMatrix::Identity(a.cols(), a.cols())).norm();
}

void ValidateChannelSpec(const ChannelSpec& spec, double iso_tol) {
  const std::string what = fmt::format("{} channel", ChannelKindName(spec.kind));
  if (spec.input_dim <= 0 || spec.output_dim <= 0) {
    throw InputError(fmt::format("{}: input_dim and output_dim must be "
                                 "positive, got {} and {}",
                                 what, spec.input_dim, spec.output_dim));
  }
  if (spec.matrices.empty()) {
    throw InputError(fmt::format("{}: no matrices given", what));
  }
  for (const CMatrix& m : spec.matrices) {
    if (!AllFinite(m)) {
      throw InputError(fmt::format("{}: matrix has non-finite entries", what));
    }
  }
  const auto require_single = [&] {
    if (spec.matrices.size() != 1) {
      throw InputError(fmt::format("{}: expected exactly one matrix, got {}",
                                   what, spec.matrices.size()));
    }
  };

  switch (spec.kind) {
    case ChannelKind::kStinespring: {
      require_single();
      const CMatrix& a = spec.matrices[0];
      if (a.cols() != spec.input_dim || a.rows() % spec.output_dim != 0) {
        throw InputError(fmt::format(
            "{}: isometry is {}x{}, which is not (output_dim {} * env_dim) x "
            "input_dim {}",
            what, a.rows(), a.cols(), spec.output_dim, spec.input_dim));
      }
      if (spec.env_dim > 0) {
        RequireShape(a, spec.output_dim * spec.env_dim, spec.input_dim, what);
      }
      RequireResidual("isometry", CheckIsometry(a), iso_tol, what);
      break;
    }
    case ChannelKind::kKraus: {
      CMatrix sum = CMatrix::Zero(spec.input_dim, spec.input_dim);
      for (const CMatrix& k : spec.matrices) {
        RequireShape(k, spec.output_dim, spec.input_dim, what);
        sum += k.adjoint() * k;
      }
      const double residual =
          (sum - CMatrix::Identity(spec.input_dim, spec.input_dim)).norm();
      RequireResidual("kraus_completeness", residual, iso_tol, what);
      break;
    }
    case ChannelKind::kUnitary: {
      require_single();
      if (spec.input_dim != spec.output_dim) {
        throw InputError(fmt::format(
            "{}: input_dim {} and output_dim {} must agree", what,
            spec.input_dim, spec.output_dim));
      }
      RequireShape(spec.matrices[0], spec.input_dim, spec.input_dim, what);
      RequireResidual("unitarity", CheckIsometry(spec.matrices[0]), iso_tol,
                      what);
      break;
    }
    case ChannelKind::kConstant: {
      require_single();
      const CMatrix& s = spec.matrices[0];
      RequireShape(s, spec.output_dim, spec.output_dim, what);
      RequireResidual("density_hermiticity", HermiticityResidual(s), iso_tol,
                      what);
      RequireResidual("density_trace", std::abs(s.trace() - Complex(1.0)),
                      iso_tol, what);
      const EigDecomp eig = HermEig(HermMatrix(s, iso_tol));
      RequireResidual("density_positivity", std::max(0.0, -eig.min()),
                      iso_tol, what);
      break;
    }
  }
}

StinespringChannel::StinespringChannel(CMatrix isometry, Index input_dim,
                                       Index output_dim, Index env_dim,
                                       double iso_tol)
    : isometry_(std::move(isometry)),
      input_dim_(input_dim),
      output_dim_(output_dim),
      env_dim_(env_dim) {
  if (input_dim <= 0 || output_dim <= 0 || env_dim <= 0) {
    throw InputError("StinespringChannel: dimensions must be positive");
  }
  RequireShape(isometry_, output_dim * env_dim, input_dim,
               "StinespringChannel");
  RequireResidual("isometry", CheckIsometry(isometry_), iso_tol,
                  "StinespringChannel");
}

CMatrix StinespringChannel::ApplyOperator(const CMatrix& x) const {
  RequireShape(x, input_dim_, input_dim_, "StinespringChannel input");
  const CMatrix full = isometry_ * x * isometry_.adjoint();
  const Index dims[] = {output_dim_, env_dim_};
  const Index keep[] = {0};
  return PartialTrace(full, dims, keep);
}

StinespringChannel StinespringChannel::PadEnvironment(Index env_dim) const {
  if (env_dim < env_dim_) {
    throw InputError(fmt::format(
        "PadEnvironment: cannot shrink environment from {} to {}", env_dim_,
        env_dim));
  }
  CMatrix padded = CMatrix::Zero(output_dim_ * env_dim, input_dim_);
  for (Index y = 0; y < output_dim_; ++y) {
    padded.middleRows(y * env_dim, env_dim_) =
        isometry_.middleRows(y * env_dim_, env_dim_);
  }
  return StinespringChannel(std::move(padded), input_dim_, output_dim_,
                            env_dim, std::numeric_limits<double>::infinity());
}

StinespringChannel Normalize(const ChannelSpec& spec, double iso_tol) {
  ValidateChannelSpec(spec, iso_tol);
  const Index n = spec.input_dim;
  const Index m = spec.output_dim;

  switch (spec.kind) {
    case ChannelKind::kStinespring: {
      const CMatrix& a = spec.matrices[0];
      return StinespringChannel(a, n, m, a.rows() / m, iso_tol);
    }
    case ChannelKind::kUnitary:
      return StinespringChannel(spec.matrices[0], n, n, 1, iso_tol);
    case ChannelKind::kKraus: {
      const auto z = static_cast<Index>(spec.matrices.size());
      CMatrix a = CMatrix::Zero(m * z, n);
      for (Index i = 0; i < z; ++i) {
        const CMatrix& k = spec.matrices[i];
        for (Index y = 0; y < m; ++y) a.row(y * z + i) = k.row(y);
      }
      return StinespringChannel(std::move(a), n, m, z, iso_tol);
    }
    case ChannelKind::kConstant: {
      const EigDecomp eig = HermEig(HermMatrix(spec.matrices[0], iso_tol));
      const Index z = m * n;
      CMatrix a = CMatrix::Zero(m * z, n);
      for (Index j = 0; j < m; ++j) {
        const double weight = std::sqrt(std::max(0.0, eig.eigenvalues(j)));
        for (Index y = 0; y < m; ++y) {
          for (Index x = 0; x < n; ++x) {
            a(y * z + j * n + x, x) = weight * eig.eigenvectors(y, j);
          }
        }
      }
      // Clipping tiny negative eigenvalues can perturb the trace at the
      // iso_tol level, hence the doubled tolerance.
      return StinespringChannel(std::move(a), n, m, z, 2.0 * iso_tol);
    }
  }
  throw InputError("Normalize: unknown channel kind");
}

HermMatrix Apply(const StinespringChannel& ch, const HermMatrix& rho) {
  if (rho.dim() != ch.input_dim()) {
    throw InputError(fmt::format(
        "Apply: channel expects a {}-dimensional input, got {}",
        ch.input_dim(), rho.dim()));
  }
  const double trace_err = std::abs(rho.matrix().trace() - Complex(1.0));
  const EigDecomp eig = HermEig(rho);
  if (trace_err > kPsdTol || eig.min() < -kPsdTol) {
    throw InputError(fmt::format(
        "Apply: input is not a density operator (trace error {:.3e}, "
        "smallest eigenvalue {:.3e})",
        trace_err, eig.min()));
  }
  return HermMatrix(ch.ApplyOperator(rho.matrix()));
}

CMatrix ApplyKraus(std::span<const CMatrix> kraus, const CMatrix& x) {
  if (kraus.empty()) throw InputError("ApplyKraus: empty Kraus list");
  CMatrix out = CMatrix::Zero(kraus[0].rows(), kraus[0].rows());
  for (const CMatrix& k : kraus) out += k * x * k.adjoint();
  return out;
}

CMatrix EmbedGate(const Gate& gate, int num_wires) {
  const auto k = static_cast<int>(gate.wires.size());
  if (k == 0) throw InputError("gate acts on no wires");
  std::set<int> seen;
  for (int w : gate.wires) {
    if (w < 0 || w >= num_wires) {
      throw InputError(fmt::format(
          "gate wire {} out of range for a {}-wire circuit", w, num_wires));
    }
    if (!seen.insert(w).second) {
      throw InputError(fmt::format("gate lists wire {} twice", w));
    }
  }
  const Index gdim = Index{1} << k;
  RequireShape(gate.unitary, gdim, gdim, "gate");

  const Index full = Index{1} << num_wires;
  // Bit of wire w in a flat index: wire 0 is the most significant.
  auto bit_pos = [num_wires](int w) { return num_wires - 1 - w; };
  Index gate_mask = 0;
  for (int w : gate.wires) gate_mask |= Index{1} << bit_pos(w);

  auto gate_index = [&](Index flat) {
    Index g = 0;
    for (int w : gate.wires) g = (g << 1) | ((flat >> bit_pos(w)) & 1);
    return g;
  };
  auto scatter = [&](Index g) {
    Index flat = 0;
    for (int i = 0; i < k; ++i) {
      const Index bit = (g >> (k - 1 - i)) & 1;
      flat |= bit << bit_pos(gate.wires[i]);
    }
    return flat;
  };

  CMatrix out = CMatrix::Zero(full, full);
  for (Index in = 0; in < full; ++in) {
    const Index rest = in & ~gate_mask;
    const Index gin = gate_index(in);
    for (Index gout = 0; gout < gdim; ++gout) {
      out(rest | scatter(gout), in) = gate.unitary(gout, gin);
    }
  }
  return out;
}

StinespringChannel CircuitToStinespring(std::span<const Gate> gates,
                                        int input_wires, int ancilla_count,
                                        std::span<const int> traced_wires,
                                        double iso_tol) {
  if (input_wires < 0 || ancilla_count < 0) {
    throw InputError("CircuitToStinespring: wire counts must be >= 0");
  }
  const int num_wires = input_wires + ancilla_count;
  if (num_wires == 0) {
    throw InputError("CircuitToStinespring: circuit has no wires");
  }
  if (static_cast<int>(traced_wires.size()) >= num_wires) {
    throw InputError(
        "CircuitToStinespring: at least one wire must remain as output");
  }
  std::vector<bool> traced(num_wires, false);
  for (int w : traced_wires) {
    if (w < 0 || w >= num_wires) {
      throw InputError(fmt::format(
          "traced wire {} out of range for a {}-wire circuit", w, num_wires));
    }
    if (traced[w]) throw InputError(fmt::format("wire {} traced twice", w));
    traced[w] = true;
  }

  const Index full = Index{1} << num_wires;
  CMatrix u = CMatrix::Identity(full, full);
  for (const Gate& g : gates) {
    const double residual = CheckIsometry(g.unitary);
    if (g.unitary.rows() != g.unitary.cols() || residual > iso_tol) {
      throw ValidationError(
          "unitarity", residual,
          fmt::format("gate on {} wire(s) is not unitary (residual {:.6g})",
                      g.wires.size(), residual));
    }
    u = EmbedGate(g, num_wires) * u;
  }

  // Inputs occupy the most significant wires; ancillas start in |0...0>.
  const Index n = Index{1} << input_wires;
  const CMatrix embedded =
      u(Eigen::all, Eigen::seq(0, full - 1, Index{1} << ancilla_count));

  // Reorder wires to (kept..., traced...).
  std::vector<int> order;
  for (int w = 0; w < num_wires; ++w) {
    if (!traced[w]) order.push_back(w);
  }
  for (int w = 0; w < num_wires; ++w) {
    if (traced[w]) order.push_back(w);
  }
  CMatrix a(full, n);
  for (Index flat = 0; flat < full; ++flat) {
    Index permuted = 0;
    for (int w : order) {
      permuted = (permuted << 1) | ((flat >> (num_wires - 1 - w)) & 1);
    }
    a.row(permuted) = embedded.row(flat);
  }

  const Index z = Index{1} << traced_wires.size();
  return StinespringChannel(std::move(a), n, full / z, z, iso_tol);
}

}  // namespace qcdmmw
