// Copyright 2026 The scriptlid Authors
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

#ifndef SCRIPTLID_MODEL_IO_HPP
#define SCRIPTLID_MODEL_IO_HPP

#include <bit>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "scriptlid/hier.hpp"
#include "scriptlid/linear.hpp"
#include "scriptlid/mlp.hpp"
#include "scriptlid/mnb.hpp"

namespace scriptlid {

/// Versioned binary model container. Little-endian throughout; neural
/// parameters are 32-bit floats, MNB parameters are its exact integer count
/// statistics (so reloaded posteriors are bit-identical to the trained
/// ones).
inline constexpr char kModelMagic[4] = {'S', 'L', 'I', 'D'};
inline constexpr std::uint32_t kModelVersion = 1;

class ModelIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void put_bytes(std::ostream& out, const void* data, std::size_t n) {
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
}

inline void put_u8(std::ostream& out, std::uint8_t v) { put_bytes(out, &v, 1); }

inline void put_u32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                        static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
  put_bytes(out, b, 4);
}

inline void put_u64(std::ostream& out, std::uint64_t v) {
  put_u32(out, static_cast<std::uint32_t>(v));
  put_u32(out, static_cast<std::uint32_t>(v >> 32));
}

inline void put_i32(std::ostream& out, std::int32_t v) {
  put_u32(out, static_cast<std::uint32_t>(v));
}

inline void put_f32(std::ostream& out, float v) { put_u32(out, std::bit_cast<std::uint32_t>(v)); }

inline void put_f64(std::ostream& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

inline void put_string(std::ostream& out, const std::string& s) {
  put_u32(out, static_cast<std::uint32_t>(s.size()));
  put_bytes(out, s.data(), s.size());
}

inline void put_string_list(std::ostream& out, const std::vector<std::string>& v) {
  put_u32(out, static_cast<std::uint32_t>(v.size()));
  for (const auto& s : v) put_string(out, s);
}

inline void put_f32_array(std::ostream& out, const std::vector<float>& v) {
  put_u64(out, v.size());
  for (float f : v) put_f32(out, f);
}

inline void put_u64_array(std::ostream& out, const std::vector<std::uint64_t>& v) {
  put_u64(out, v.size());
  for (auto x : v) put_u64(out, x);
}

inline void put_ngram_spec(std::ostream& out, const NgramSpec& s) {
  put_i32(out, s.n_min);
  put_i32(out, s.n_max);
  put_u8(out, s.word_boundaries ? 1 : 0);
  put_u8(out, s.hash_buckets.has_value() ? 1 : 0);
  put_u32(out, s.hash_buckets.value_or(0));
}

class Reader {
 public:
  explicit Reader(std::istream& in, std::string name) : in_(in), name_(std::move(name)) {}

  void bytes(void* data, std::size_t n) {
    in_.read(static_cast<char*>(data), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n) {
      throw ModelIoError(name_ + ": truncated model file");
    }
  }

  std::uint8_t u8() {
    std::uint8_t v;
    bytes(&v, 1);
    return v;
  }

  std::uint32_t u32() {
    unsigned char b[4];
    bytes(b, 4);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
  }

  std::uint64_t u64() {
    const std::uint64_t lo = u32();
    const std::uint64_t hi = u32();
    return lo | (hi << 32);
  }

  std::int32_t i32() { return static_cast<std::int32_t>(u32()); }
  float f32() { return std::bit_cast<float>(u32()); }
  double f64() { return std::bit_cast<double>(u64()); }

  std::string string() {
    const auto len = u32();
    std::string s(len, '\0');
    bytes(s.data(), len);
    return s;
  }

  std::vector<std::string> string_list() {
    const auto count = u32();
    std::vector<std::string> v;
    v.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) v.push_back(string());
    return v;
  }

  std::vector<float> f32_array() {
    const auto count = u64();
    std::vector<float> v(count);
    for (auto& f : v) f = f32();
    return v;
  }

  std::vector<std::uint64_t> u64_array() {
    const auto count = u64();
    std::vector<std::uint64_t> v(count);
    for (auto& x : v) x = u64();
    return v;
  }

  NgramSpec ngram_spec() {
    NgramSpec s;
    s.n_min = i32();
    s.n_max = i32();
    s.word_boundaries = u8() != 0;
    const bool has_buckets = u8() != 0;
    const auto buckets = u32();
    if (has_buckets) s.hash_buckets = buckets;
    return s;
  }

  const std::string& name() const { return name_; }

 private:
  std::istream& in_;
  std::string name_;
};

inline void put_header(std::ostream& out, ModelKind kind) {
  put_bytes(out, kModelMagic, 4);
  put_u32(out, kModelVersion);
  put_u8(out, static_cast<std::uint8_t>(kind));
}

inline ModelKind read_header(Reader& r) {
  char magic[4];
  r.bytes(magic, 4);
  if (std::string_view(magic, 4) != std::string_view(kModelMagic, 4)) {
    throw ModelIoError(r.name() + ": not a model file (bad magic)");
  }
  const auto version = r.u32();
  if (version != kModelVersion) {
    throw ModelIoError(r.name() + ": unsupported model file version " + std::to_string(version));
  }
  const auto kind = r.u8();
  if (kind > static_cast<std::uint8_t>(ModelKind::kHierarchical)) {
    throw ModelIoError(r.name() + ": unknown model kind " + std::to_string(kind));
  }
  return static_cast<ModelKind>(kind);
}

}  // namespace detail

// --- save implementations --------------------------------------------------

inline void MnbModel::save(std::ostream& out) const {
  detail::put_header(out, ModelKind::kMnb);
  detail::put_string_list(out, labels_);
  detail::put_ngram_spec(out, spec_);
  detail::put_string_list(out, vocab_);
  detail::put_u64_array(out, class_doc_counts_);
  for (const auto& counts : feature_counts_) detail::put_u64_array(out, counts);
  if (!out) throw ModelIoError("failed writing MNB model");
}

inline void SubwordLinearModel::save(std::ostream& out) const {
  detail::put_header(out, ModelKind::kSubwordLinear);
  detail::put_string_list(out, labels_);
  detail::put_ngram_spec(out, hyper_.ngrams);
  detail::put_i32(out, hyper_.dim);
  detail::put_f64(out, hyper_.lr);
  detail::put_i32(out, hyper_.epochs);
  detail::put_u64(out, hyper_.seed);
  detail::put_f32_array(out, embeddings_);
  detail::put_f32_array(out, w_);
  detail::put_f32_array(out, b_);
  if (!out) throw ModelIoError("failed writing subword model");
}

inline void MlpModel::save(std::ostream& out) const {
  detail::put_header(out, ModelKind::kMlp);
  detail::put_string_list(out, labels_);
  detail::put_ngram_spec(out, spec_);
  detail::put_i32(out, hyper_.hidden);
  detail::put_i32(out, hyper_.max_iter);
  detail::put_i32(out, hyper_.batch);
  detail::put_f64(out, hyper_.lr);
  detail::put_u64(out, hyper_.seed);
  detail::put_string_list(out, vocab_);
  detail::put_f32_array(out, w1_);
  detail::put_f32_array(out, b1_);
  detail::put_f32_array(out, w2_);
  detail::put_f32_array(out, b2_);
  if (!out) throw ModelIoError("failed writing MLP model");
}

inline void HierarchicalModel::save(std::ostream& out) const {
  detail::put_header(out, ModelKind::kHierarchical);
  detail::put_u32(out, static_cast<std::uint32_t>(clusters_.clusters.size()));
  for (const auto& c : clusters_.clusters) detail::put_string_list(out, c);
  detail::put_string_list(out, clusters_.unclustered);
  root_->save(out);
  for (const auto& e : experts_) e->save(out);
  if (!out) throw ModelIoError("failed writing hierarchical model");
}

// --- loading ----------------------------------------------------------------

inline std::shared_ptr<Classifier> load_model(std::istream& in, const std::string& name);

namespace detail {

inline std::shared_ptr<Classifier> load_mnb(Reader& r) {
  auto labels = r.string_list();
  auto spec = r.ngram_spec();
  auto vocab = r.string_list();
  auto doc_counts = r.u64_array();
  if (doc_counts.size() != labels.size()) throw ModelIoError(r.name() + ": corrupt MNB payload");
  std::vector<std::vector<std::uint64_t>> counts;
  counts.reserve(labels.size());
  for (std::size_t c = 0; c < labels.size(); ++c) {
    counts.push_back(r.u64_array());
    if (counts.back().size() != vocab.size()) {
      throw ModelIoError(r.name() + ": corrupt MNB payload");
    }
  }
  return std::make_shared<MnbModel>(std::move(labels), spec, std::move(vocab),
                                    std::move(doc_counts), std::move(counts));
}

inline std::shared_ptr<Classifier> load_subword(Reader& r) {
  auto labels = r.string_list();
  SubwordHyper hyper;
  hyper.ngrams = r.ngram_spec();
  hyper.dim = r.i32();
  hyper.lr = r.f64();
  hyper.epochs = r.i32();
  hyper.seed = r.u64();
  auto emb = r.f32_array();
  auto w = r.f32_array();
  auto b = r.f32_array();
  if (!hyper.ngrams.hash_buckets.has_value() ||
      emb.size() != static_cast<std::size_t>(*hyper.ngrams.hash_buckets) *
                        static_cast<std::size_t>(hyper.dim) ||
      w.size() != labels.size() * static_cast<std::size_t>(hyper.dim) ||
      b.size() != labels.size()) {
    throw ModelIoError(r.name() + ": corrupt subword payload");
  }
  return std::make_shared<SubwordLinearModel>(std::move(labels), hyper, std::move(emb),
                                              std::move(w), std::move(b));
}

inline std::shared_ptr<Classifier> load_mlp(Reader& r) {
  auto labels = r.string_list();
  auto spec = r.ngram_spec();
  MlpHyper hyper;
  hyper.hidden = r.i32();
  hyper.max_iter = r.i32();
  hyper.batch = r.i32();
  hyper.lr = r.f64();
  hyper.seed = r.u64();
  auto vocab = r.string_list();
  auto w1 = r.f32_array();
  auto b1 = r.f32_array();
  auto w2 = r.f32_array();
  auto b2 = r.f32_array();
  const auto hidden = static_cast<std::size_t>(hyper.hidden);
  if (w1.size() != hidden * vocab.size() || b1.size() != hidden ||
      w2.size() != labels.size() * hidden || b2.size() != labels.size()) {
    throw ModelIoError(r.name() + ": corrupt MLP payload");
  }
  return std::make_shared<MlpModel>(std::move(labels), spec, hyper, std::move(vocab),
                                    std::move(w1), std::move(b1), std::move(w2), std::move(b2));
}

}  // namespace detail

/// Reads any model container. Hierarchical containers embed the root and
/// expert models recursively.
inline std::shared_ptr<Classifier> load_model(std::istream& in, const std::string& name) {
  detail::Reader r(in, name);
  const ModelKind kind = detail::read_header(r);
  switch (kind) {
    case ModelKind::kMnb:
      return detail::load_mnb(r);
    case ModelKind::kSubwordLinear:
      return detail::load_subword(r);
    case ModelKind::kMlp:
      return detail::load_mlp(r);
    case ModelKind::kHierarchical: {
      ClusterSet cs;
      const auto n_clusters = r.u32();
      for (std::uint32_t i = 0; i < n_clusters; ++i) cs.clusters.push_back(r.string_list());
      cs.unclustered = r.string_list();
      auto root = load_model(in, name);
      std::vector<std::shared_ptr<const Classifier>> experts;
      for (std::uint32_t i = 0; i < n_clusters; ++i) experts.push_back(load_model(in, name));
      return std::make_shared<HierarchicalModel>(std::move(root), std::move(experts),
                                                 std::move(cs));
    }
  }
  throw ModelIoError(name + ": unknown model kind");
}

inline void save_model(const Classifier& model, const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw ModelIoError("cannot write model file " + file.string());
  model.save(out);
  out.flush();
  if (!out) throw ModelIoError("failed writing model file " + file.string());
}

inline std::shared_ptr<Classifier> load_model(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ModelIoError("cannot open model file " + file.string());
  return load_model(in, file.string());
}

}  // namespace scriptlid

#endif  // SCRIPTLID_MODEL_IO_HPP
