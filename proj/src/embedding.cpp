// Copyright 2026 The Novelscope Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "novelscope/embedding.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <map>
#include <random>
#include <unordered_map>

#include <fmt/format.h>

#include "novelscope/error.hpp"
#include "novelscope/lexicon.hpp"
#include "novelscope/text.hpp"

namespace novelscope {
namespace {

constexpr std::string_view kMagic = "NSV1";

class NegativeSampler {
 public:
  explicit NegativeSampler(const std::vector<std::int64_t>& counts) {
    cumulative_.reserve(counts.size());
    double sum = 0;
    for (auto c : counts) {
      sum += std::pow(static_cast<double>(c), 0.75);
      cumulative_.push_back(sum);
    }
  }

  template <typename Rng>
  std::uint32_t draw(Rng& rng) const {
    const double u = std::uniform_real_distribution<double>(0.0, cumulative_.back())(rng);
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end()) --it;
    return static_cast<std::uint32_t>(it - cumulative_.begin());
  }

 private:
  std::vector<double> cumulative_;
};

float sigmoid(float x) {
  if (x > 20.0f) return 1.0f;
  if (x < -20.0f) return 0.0f;
  return 1.0f / (1.0f + std::exp(-x));
}

// One negative-sampling step: input row `in` predicts word `target`.
template <typename Rng>
void train_pair(float* in, std::uint32_t target, float* output, int dim, int negative, float lr,
                const NegativeSampler& sampler, Rng& rng, std::vector<float>& gradient) {
  std::fill(gradient.begin(), gradient.end(), 0.0f);
  for (int n = 0; n <= negative; ++n) {
    std::uint32_t word = target;
    float label = 1.0f;
    if (n > 0) {
      word = sampler.draw(rng);
      if (word == target) continue;
      label = 0.0f;
    }
    float* out = output + static_cast<std::size_t>(word) * dim;
    float dot = 0.0f;
    for (int d = 0; d < dim; ++d) dot += in[d] * out[d];
    const float g = (label - sigmoid(dot)) * lr;
    for (int d = 0; d < dim; ++d) {
      gradient[d] += g * out[d];
      out[d] += g * in[d];
    }
  }
  for (int d = 0; d < dim; ++d) in[d] += gradient[d];
}

void normalize(std::span<float> row) {
  double norm = 0;
  for (float v : row) norm += static_cast<double>(v) * v;
  norm = std::sqrt(norm);
  if (norm == 0) return;
  for (float& v : row) v = static_cast<float>(v / norm);
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint32_t get_u32(std::string_view in, std::size_t& pos) {
  if (pos + 4 > in.size()) throw Error(ErrorCode::kParse, "vector file truncated");
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[pos + i])) << (8 * i);
  pos += 4;
  return v;
}

}  // namespace

std::vector<std::string> embedding_stream(const AnnotatedBook& book, const Lexicons& lex) {
  std::vector<std::string> out;
  for (const auto& t : tokens(book)) {
    if (!text::has_letter(t.text) || t.pos == PosTag::kOther || t.pos == PosTag::kPunct) continue;
    std::string key = t.lemma ? *t.lemma : text::fold_case(t.text);
    if (lex.stopwords.contains(key) || lex.stopwords.contains(text::fold_case(t.text))) continue;
    out.push_back(std::move(key));
  }
  return out;
}

std::span<const float> BookVectors::vector(std::size_t row) const {
  return std::span<const float>(values).subspan(row * static_cast<std::size_t>(dim), static_cast<std::size_t>(dim));
}

std::size_t BookVectors::row_of(std::string_view id) const {
  auto it = std::lower_bound(ids.begin(), ids.end(), id);
  if (it == ids.end() || *it != id) throw Error(ErrorCode::kUnknownId, fmt::format("no vector for book '{}'", id));
  return static_cast<std::size_t>(it - ids.begin());
}

BookVectors train_embeddings(std::vector<EmbeddingDocument> documents, const EmbeddingOptions& options) {
  if (options.dim <= 0 || options.window <= 0 || options.epochs <= 0 || options.negative < 0) {
    throw Error(ErrorCode::kInvalidArgument, "embedding dimensions, window and epochs must be positive");
  }
  std::sort(documents.begin(), documents.end(), [](const auto& a, const auto& b) { return a.id < b.id; });

  std::unordered_map<std::string, std::int64_t> raw_counts;
  for (const auto& doc : documents) {
    for (const auto& w : doc.words) ++raw_counts[w];
  }
  std::vector<std::pair<std::string, std::int64_t>> vocab;
  for (auto& [w, c] : raw_counts) {
    if (c >= options.min_count) vocab.emplace_back(w, c);
  }
  std::sort(vocab.begin(), vocab.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  if (vocab.size() > options.vocab_max) vocab.resize(options.vocab_max);
  if (vocab.empty()) throw Error(ErrorCode::kEmptyInput, "embedding vocabulary is empty after filtering");

  std::unordered_map<std::string, std::uint32_t> word_id;
  std::vector<std::int64_t> counts;
  for (std::uint32_t i = 0; i < vocab.size(); ++i) {
    word_id.emplace(vocab[i].first, i);
    counts.push_back(vocab[i].second);
  }
  std::vector<std::vector<std::uint32_t>> streams;
  std::int64_t total_words = 0;
  for (const auto& doc : documents) {
    std::vector<std::uint32_t> stream;
    for (const auto& w : doc.words) {
      if (auto it = word_id.find(w); it != word_id.end()) stream.push_back(it->second);
    }
    total_words += static_cast<std::int64_t>(stream.size());
    streams.push_back(std::move(stream));
  }

  const int dim = options.dim;
  const std::size_t udim = static_cast<std::size_t>(dim);
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<float> init(-0.5f / static_cast<float>(dim), 0.5f / static_cast<float>(dim));
  std::vector<float> doc_vectors(documents.size() * udim);
  for (float& v : doc_vectors) v = init(rng);
  std::vector<float> word_vectors(options.train_words ? vocab.size() * udim : 0);
  for (float& v : word_vectors) v = init(rng);
  std::vector<float> output(vocab.size() * udim, 0.0f);
  const NegativeSampler sampler(counts);
  std::vector<float> gradient(udim);

  const double total_steps = static_cast<double>(std::max<std::int64_t>(1, total_words)) * options.epochs;
  const float lr_floor = static_cast<float>(options.learning_rate * 1e-4);
  std::int64_t step = 0;
  std::uniform_int_distribution<int> shrink(1, options.window);
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    for (std::size_t d = 0; d < streams.size(); ++d) {
      const auto& stream = streams[d];
      float* doc = doc_vectors.data() + d * udim;
      for (std::size_t i = 0; i < stream.size(); ++i, ++step) {
        const float lr = std::max(
            lr_floor, static_cast<float>(options.learning_rate * (1.0 - static_cast<double>(step) / total_steps)));
        train_pair(doc, stream[i], output.data(), dim, options.negative, lr, sampler, rng, gradient);
        if (!options.train_words) continue;
        const int reach = shrink(rng);
        const std::size_t lo = i >= static_cast<std::size_t>(reach) ? i - static_cast<std::size_t>(reach) : 0;
        const std::size_t hi = std::min(stream.size() - 1, i + static_cast<std::size_t>(reach));
        for (std::size_t j = lo; j <= hi; ++j) {
          if (j == i) continue;
          train_pair(word_vectors.data() + stream[j] * udim, stream[i], output.data(), dim, options.negative, lr,
                     sampler, rng, gradient);
        }
      }
    }
  }

  BookVectors out;
  out.dim = dim;
  for (std::size_t d = 0; d < documents.size(); ++d) {
    out.ids.push_back(documents[d].id);
    out.corpora.push_back(documents[d].corpus);
    normalize(std::span<float>(doc_vectors).subspan(d * udim, udim));
  }
  out.values = std::move(doc_vectors);
  return out;
}

double cosine(std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kLengthMismatch, fmt::format("vector lengths differ: {} vs {}", a.size(), b.size()));
  }
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += static_cast<double>(a[i]) * b[i];
    na += static_cast<double>(a[i]) * a[i];
    nb += static_cast<double>(b[i]) * b[i];
  }
  if (na == 0 || nb == 0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::vector<Neighbor> most_similar(const BookVectors& vectors, std::string_view id, std::size_t k, bool per_corpus) {
  const std::size_t query = vectors.row_of(id);
  std::vector<Neighbor> all;
  for (std::size_t r = 0; r < vectors.ids.size(); ++r) {
    if (r == query) continue;
    const std::string corpus = r < vectors.corpora.size() ? vectors.corpora[r] : std::string();
    all.push_back({vectors.ids[r], corpus, cosine(vectors.vector(query), vectors.vector(r))});
  }
  std::sort(all.begin(), all.end(), [](const Neighbor& a, const Neighbor& b) {
    return a.similarity != b.similarity ? a.similarity > b.similarity : a.id < b.id;
  });
  if (!per_corpus) {
    if (all.size() > k) all.resize(k);
    return all;
  }
  std::map<std::string, std::vector<Neighbor>> by_corpus;
  for (auto& n : all) {
    auto& bucket = by_corpus[n.corpus];
    if (bucket.size() < k) bucket.push_back(std::move(n));
  }
  std::vector<Neighbor> out;
  for (auto& [corpus, bucket] : by_corpus) out.insert(out.end(), bucket.begin(), bucket.end());
  return out;
}

std::string serialize_vectors(const BookVectors& vectors) {
  std::string out(kMagic);
  put_u32(out, static_cast<std::uint32_t>(vectors.ids.size()));
  put_u32(out, static_cast<std::uint32_t>(vectors.dim));
  for (std::size_t r = 0; r < vectors.ids.size(); ++r) {
    put_u32(out, static_cast<std::uint32_t>(vectors.ids[r].size()));
    out += vectors.ids[r];
    for (float v : vectors.vector(r)) put_u32(out, std::bit_cast<std::uint32_t>(v));
  }
  return out;
}

BookVectors parse_vectors(std::string_view in) {
  if (!in.starts_with(kMagic)) throw Error(ErrorCode::kParse, "not a vector file (bad magic)");
  std::size_t pos = kMagic.size();
  const std::uint32_t count = get_u32(in, pos);
  BookVectors out;
  out.dim = static_cast<int>(get_u32(in, pos));
  for (std::uint32_t r = 0; r < count; ++r) {
    const std::uint32_t len = get_u32(in, pos);
    if (pos + len > in.size()) throw Error(ErrorCode::kParse, "vector file truncated");
    out.ids.emplace_back(in.substr(pos, len));
    out.corpora.emplace_back();
    pos += len;
    for (int d = 0; d < out.dim; ++d) out.values.push_back(std::bit_cast<float>(get_u32(in, pos)));
  }
  if (pos != in.size()) throw Error(ErrorCode::kParse, "trailing bytes in vector file");
  if (!std::is_sorted(out.ids.begin(), out.ids.end())) throw Error(ErrorCode::kParse, "vector ids are not sorted");
  return out;
}

}  // namespace novelscope
