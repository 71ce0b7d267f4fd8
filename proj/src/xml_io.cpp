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

#include "novelscope/xml_io.hpp"

#include <charconv>
#include <memory>
#include <utility>

#include <fmt/format.h>

#include "novelscope/error.hpp"
#include "novelscope/files.hpp"
#include "novelscope/text.hpp"

namespace novelscope {
namespace {

constexpr std::string_view kDeclaration = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";

// ---------------------------------------------------------------- writing

void escape_into(std::string& out, std::string_view s, bool attribute) {
  for (char c : s) {
    const auto u = static_cast<unsigned char>(c);
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"':
        if (attribute) {
          out += "&quot;";
        } else {
          out += c;
        }
        break;
      case '\n':
      case '\t':
        if (attribute) {
          out += fmt::format("&#{};", static_cast<int>(u));
        } else {
          out += c;
        }
        break;
      default:
        // XML 1.0 forbids raw control characters; they round-trip as references.
        if (u < 0x20 || u == 0x7f) {
          out += fmt::format("&#{};", static_cast<int>(u));
        } else {
          out += c;
        }
    }
  }
}

class Writer {
 public:
  explicit Writer(std::string& out) : out_(out) {}

  void open(std::string_view name) {
    indent();
    out_ += '<';
    out_ += name;
  }
  void attr(std::string_view name, std::string_view value) {
    out_ += ' ';
    out_ += name;
    out_ += "=\"";
    escape_into(out_, value, true);
    out_ += '"';
  }
  template <typename T>
  void attr(std::string_view name, const std::optional<T>& value) {
    if (value) attr(name, fmt::format("{}", *value));
  }
  void attr(std::string_view name, std::int64_t value) { attr(name, std::to_string(value)); }
  // Ends the start tag of an element that has child elements.
  void children() {
    out_ += ">\n";
    ++depth_;
  }
  void close(std::string_view name) {
    --depth_;
    indent();
    out_ += "</";
    out_ += name;
    out_ += ">\n";
  }
  void empty() { out_ += "/>\n"; }
  void text(std::string_view name, std::string_view value) {
    out_ += '>';
    escape_into(out_, value, false);
    out_ += "</";
    out_ += name;
    out_ += ">\n";
  }

 private:
  void indent() { out_.append(static_cast<std::size_t>(depth_) * 2, ' '); }

  std::string& out_;
  int depth_ = 0;
};

void write_blocks(Writer& w, std::string_view name, const std::vector<MatterBlock>& blocks) {
  w.open(name);
  if (blocks.empty()) return w.empty();
  w.children();
  for (const auto& block : blocks) {
    w.open("block");
    w.attr("kind", block_kind_name(block.kind));
    w.text("block", block.text);
  }
  w.close(name);
}

void write_token(Writer& w, const Token& t) {
  w.open("t");
  w.attr("i", t.index);
  w.attr("o", t.offset);
  if (t.pos) w.attr("pos", pos_name(*t.pos));
  if (t.lemma) w.attr("lemma", *t.lemma);
  if (t.ner) w.attr("ner", ner_name(*t.ner));
  w.attr("char", t.character);
  w.attr("q", t.quote);
  if (!t.ws.empty()) w.attr("ws", t.ws);
  w.text("t", t.text);
}

void write_section(Writer& w, const Section& section) {
  w.open("section");
  if (!section.header && section.paragraphs.empty()) return w.empty();
  w.children();
  if (const auto& h = section.header) {
    w.open("header");
    w.attr("kind", header_kind_name(h->kind));
    w.attr("n", h->number);
    if (!h->ws.empty()) w.attr("ws", h->ws);
    w.text("header", h->raw);
  }
  for (const auto& p : section.paragraphs) {
    w.open("p");
    w.children();
    for (const auto& s : p.sentences) {
      w.open("s");
      w.children();
      for (const auto& t : s.tokens) write_token(w, t);
      w.close("s");
    }
    w.close("p");
  }
  w.close("section");
}

// ---------------------------------------------------------------- parsing

struct Node {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attrs;
  std::vector<std::unique_ptr<Node>> children;
  std::string text;
  int line = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view in) : in_(in) {}

  std::unique_ptr<Node> document() {
    skip_space();
    if (in_.substr(pos_).starts_with("<?xml")) {
      const auto end = in_.find("?>", pos_);
      if (end == std::string_view::npos) fail("unterminated XML declaration");
      advance_to(end + 2);
    }
    skip_misc();
    if (peek() != '<') fail("expected root element");
    auto root = element();
    skip_misc();
    if (pos_ != in_.size()) fail("content after the root element");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::kParse, fmt::format("line {}: {}", line_, what));
  }

  char peek() const { return pos_ < in_.size() ? in_[pos_] : '\0'; }

  void advance_to(std::size_t target) {
    for (; pos_ < target; ++pos_) {
      if (in_[pos_] == '\n') ++line_;
    }
  }

  void skip_space() {
    while (pos_ < in_.size() && text::is_space(static_cast<unsigned char>(in_[pos_]))) advance_to(pos_ + 1);
  }

  void skip_misc() {
    for (;;) {
      skip_space();
      if (!in_.substr(pos_).starts_with("<!--")) return;
      const auto end = in_.find("-->", pos_ + 4);
      if (end == std::string_view::npos) fail("unterminated comment");
      advance_to(end + 3);
    }
  }

  void expect(char c) {
    if (peek() != c) {
      if (pos_ >= in_.size()) fail(fmt::format("unexpected end of input, expected '{}'", c));
      fail(fmt::format("expected '{}'", c));
    }
    advance_to(pos_ + 1);
  }

  static bool name_char(char c, bool first) {
    const bool alpha = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
    return first ? alpha : alpha || (c >= '0' && c <= '9') || c == '-' || c == '.';
  }

  std::string name() {
    const auto start = pos_;
    if (!name_char(peek(), true)) fail("expected a name");
    while (pos_ < in_.size() && name_char(in_[pos_], false)) ++pos_;
    return std::string(in_.substr(start, pos_ - start));
  }

  // Decodes text up to `stop`, resolving entity and character references.
  std::string decode(char stop) {
    std::string out;
    while (pos_ < in_.size() && in_[pos_] != stop) {
      const char c = in_[pos_];
      if (c == '&') {
        const auto semi = in_.find(';', pos_);
        if (semi == std::string_view::npos || semi - pos_ > 12) fail("unterminated reference");
        const std::string_view ref = in_.substr(pos_ + 1, semi - pos_ - 1);
        if (ref == "amp") {
          out += '&';
        } else if (ref == "lt") {
          out += '<';
        } else if (ref == "gt") {
          out += '>';
        } else if (ref == "quot") {
          out += '"';
        } else if (ref == "apos") {
          out += '\'';
        } else if (ref.starts_with('#')) {
          const bool hex = ref.size() > 1 && (ref[1] == 'x' || ref[1] == 'X');
          const auto digits = ref.substr(hex ? 2 : 1);
          std::uint32_t cp = 0;
          auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), cp, hex ? 16 : 10);
          if (ec != std::errc() || end != digits.data() + digits.size() || digits.empty() ||
              cp > 0x10FFFF) {
            fail(fmt::format("bad character reference '&{};'", ref));
          }
          text::append_utf8(out, static_cast<char32_t>(cp));
        } else {
          fail(fmt::format("unknown entity '&{};'", ref));
        }
        advance_to(semi + 1);
      } else if (c == '<' && stop == '"') {
        fail("'<' in attribute value");
      } else {
        if (c == '\n') ++line_;
        out += c;
        ++pos_;
      }
    }
    return out;
  }

  std::unique_ptr<Node> element() {
    auto node = std::make_unique<Node>();
    node->line = line_;
    expect('<');
    node->name = name();
    for (;;) {
      skip_space();
      const char c = peek();
      if (c == '/') {
        advance_to(pos_ + 1);
        expect('>');
        return node;
      }
      if (c == '>') {
        advance_to(pos_ + 1);
        break;
      }
      if (pos_ >= in_.size()) fail(fmt::format("unexpected end of input in <{}>", node->name));
      std::string key = name();
      skip_space();
      expect('=');
      skip_space();
      const char quote = peek();
      if (quote != '"' && quote != '\'') fail("expected a quoted attribute value");
      advance_to(pos_ + 1);
      std::string value = decode(quote);
      expect(quote);
      for (const auto& [k, _] : node->attrs) {
        if (k == key) fail(fmt::format("duplicate attribute '{}'", key));
      }
      node->attrs.emplace_back(std::move(key), std::move(value));
    }
    for (;;) {
      node->text += decode('<');
      if (pos_ >= in_.size()) fail(fmt::format("unexpected end of input inside <{}>", node->name));
      if (in_.substr(pos_).starts_with("<!--")) {
        const auto end = in_.find("-->", pos_ + 4);
        if (end == std::string_view::npos) fail("unterminated comment");
        advance_to(end + 3);
      } else if (in_.substr(pos_).starts_with("</")) {
        advance_to(pos_ + 2);
        const std::string closing = name();
        if (closing != node->name) {
          fail(fmt::format("mismatched closing tag </{}> for <{}>", closing, node->name));
        }
        skip_space();
        expect('>');
        return node;
      } else {
        node->children.push_back(element());
      }
    }
  }

  std::string_view in_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

// Typed access to one element, rejecting anything not consumed.
class View {
 public:
  explicit View(const Node& node) : node_(node), used_(node.attrs.size(), false) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::kParse, fmt::format("line {}: <{}>: {}", node_.line, node_.name, what));
  }

  std::optional<std::string> opt(std::string_view key) {
    for (std::size_t i = 0; i < node_.attrs.size(); ++i) {
      if (node_.attrs[i].first == key) {
        used_[i] = true;
        return node_.attrs[i].second;
      }
    }
    return std::nullopt;
  }

  std::string req(std::string_view key) {
    auto v = opt(key);
    if (!v) fail(fmt::format("missing attribute '{}'", key));
    return *v;
  }

  template <typename Int>
  std::optional<Int> opt_int(std::string_view key) {
    auto v = opt(key);
    if (!v) return std::nullopt;
    Int out{};
    auto [end, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
    if (ec != std::errc() || end != v->data() + v->size() || v->empty()) {
      fail(fmt::format("attribute '{}' is not an integer: '{}'", key, *v));
    }
    return out;
  }

  template <typename Int>
  Int req_int(std::string_view key) {
    auto v = opt_int<Int>(key);
    if (!v) fail(fmt::format("missing attribute '{}'", key));
    return *v;
  }

  template <typename Enum>
  Enum req_enum(std::string_view key, std::optional<Enum> (*parse_fn)(std::string_view)) {
    const std::string v = req(key);
    auto parsed = parse_fn(v);
    if (!parsed) fail(fmt::format("unknown {} '{}'", key, v));
    return *parsed;
  }

  template <typename Enum>
  std::optional<Enum> opt_enum(std::string_view key, std::optional<Enum> (*parse_fn)(std::string_view)) {
    if (!opt(key)) return std::nullopt;
    return req_enum(key, parse_fn);
  }

  // Child elements, each of which must be named `name`.
  std::vector<const Node*> children(std::string_view name) const {
    std::vector<const Node*> out;
    for (const auto& c : node_.children) {
      if (c->name != name) unknown(*c);
      out.push_back(c.get());
    }
    return out;
  }

  const std::string& text() const {
    if (!node_.children.empty()) unknown(*node_.children.front());
    return node_.text;
  }

  void no_text() const {
    if (!text::is_blank(node_.text)) fail("unexpected character data");
  }

  void done() const {
    for (std::size_t i = 0; i < used_.size(); ++i) {
      if (!used_[i]) fail(fmt::format("unknown attribute '{}'", node_.attrs[i].first));
    }
  }

  static void unknown(const Node& n) {
    throw Error(ErrorCode::kParse, fmt::format("line {}: unknown element <{}>", n.line, n.name));
  }

 private:
  const Node& node_;
  std::vector<bool> used_;
};

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  for (auto part : text::split(s, ' ')) {
    if (!part.empty()) out.emplace_back(part);
  }
  return out;
}

BookMeta read_meta(const Node& node) {
  View v(node);
  BookMeta meta;
  meta.source_id = v.req("source");
  meta.corpus = v.req("corpus");
  meta.title = v.req("title");
  meta.author = v.req("author");
  meta.year = v.opt_int<int>("year");
  meta.encoding = v.req("encoding");
  meta.digest = v.req("digest");
  meta.corpus_digest = v.opt("corpus_digest").value_or("");
  for (const auto& name : split_words(v.req("phases"))) {
    auto phase = parse_phase(name);
    if (!phase) v.fail(fmt::format("unknown phase '{}'", name));
    meta.phases.push_back(*phase);
  }
  v.done();
  v.no_text();
  for (const Node* s : v.children("subject")) {
    View sv(*s);
    sv.done();
    meta.subjects.push_back(sv.text());
  }
  return meta;
}

CharacterRecord read_character(const Node& node) {
  View v(node);
  CharacterRecord c;
  c.id = v.req_int<int>("id");
  c.canonical_name = v.req("name");
  c.gender = v.req_enum<Gender>("gender", parse_gender);
  const int count = v.req_int<int>("count");
  c.gcc = v.req_int<int>("gcc");
  c.fpcc = v.req_int<int>("fpcc");
  c.spcc = v.req_int<int>("spcc");
  v.done();
  v.no_text();
  bool have_mentions = false;
  for (const auto& child : node.children) {
    View cv(*child);
    if (child->name == "alias") {
      const int n = cv.req_int<int>("count");
      cv.done();
      if (!c.aliases.emplace(cv.text(), n).second) cv.fail("duplicate alias");
    } else if (child->name == "mentions") {
      cv.done();
      if (have_mentions) cv.fail("duplicate mentions");
      have_mentions = true;
      for (const auto& word : split_words(cv.text())) {
        std::int64_t value = 0;
        auto [end, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
        if (ec != std::errc() || end != word.data() + word.size()) cv.fail("bad mention index");
        c.mentions.push_back(value);
      }
    } else {
      View::unknown(*child);
    }
  }
  if (count != c.count()) v.fail(fmt::format("count {} but {} mentions", count, c.count()));
  return c;
}

QuoteSpan read_quote(const Node& node) {
  View v(node);
  QuoteSpan q;
  q.id = v.req_int<int>("id");
  q.start = v.req_int<std::int64_t>("start");
  q.end = v.req_int<std::int64_t>("end");
  q.speaker = v.opt_int<int>("speaker");
  q.addressee = v.opt_int<int>("addressee");
  v.done();
  v.no_text();
  v.children("");
  return q;
}

std::vector<MatterBlock> read_blocks(const Node& node) {
  View v(node);
  v.done();
  v.no_text();
  std::vector<MatterBlock> out;
  for (const Node* b : v.children("block")) {
    View bv(*b);
    MatterBlock block;
    block.kind = bv.req_enum<BlockKind>("kind", parse_block_kind);
    bv.done();
    block.text = bv.text();
    out.push_back(std::move(block));
  }
  return out;
}

Token read_token(const Node& node) {
  View v(node);
  Token t;
  t.index = v.req_int<std::int64_t>("i");
  t.offset = v.req_int<std::int64_t>("o");
  t.pos = v.opt_enum<PosTag>("pos", parse_pos);
  t.lemma = v.opt("lemma");
  t.ner = v.opt_enum<NerTag>("ner", parse_ner);
  t.character = v.opt_int<int>("char");
  t.quote = v.opt_int<int>("q");
  t.ws = v.opt("ws").value_or("");
  v.done();
  t.text = v.text();
  return t;
}

Section read_section(const Node& node) {
  View v(node);
  v.done();
  v.no_text();
  Section section;
  for (const auto& child : node.children) {
    if (child->name == "header") {
      if (section.header || !section.paragraphs.empty()) View(*child).fail("header must come first");
      View hv(*child);
      Header h;
      h.kind = hv.req_enum<HeaderKind>("kind", parse_header_kind);
      h.number = hv.opt_int<int>("n");
      h.ws = hv.opt("ws").value_or("");
      hv.done();
      h.raw = hv.text();
      section.header = std::move(h);
    } else if (child->name == "p") {
      View pv(*child);
      pv.done();
      pv.no_text();
      Paragraph p;
      for (const Node* s : pv.children("s")) {
        View sv(*s);
        sv.done();
        sv.no_text();
        Sentence sentence;
        for (const Node* t : sv.children("t")) sentence.tokens.push_back(read_token(*t));
        p.sentences.push_back(std::move(sentence));
      }
      section.paragraphs.push_back(std::move(p));
    } else {
      View::unknown(*child);
    }
  }
  return section;
}

}  // namespace

std::string serialize(const AnnotatedBook& book) {
  check_invariants(book);
  std::string out;
  out.reserve(token_count(book) * 48 + 4096);
  out += kDeclaration;
  Writer w(out);

  w.open("book");
  w.attr("version", "1");
  w.children();

  const auto& m = book.meta;
  w.open("meta");
  w.attr("source", m.source_id);
  w.attr("corpus", m.corpus);
  w.attr("title", m.title);
  w.attr("author", m.author);
  w.attr("year", m.year);
  w.attr("encoding", m.encoding);
  w.attr("digest", m.digest);
  if (!m.corpus_digest.empty()) w.attr("corpus_digest", m.corpus_digest);
  std::vector<std::string_view> phase_names;
  for (Phase p : m.phases) phase_names.push_back(phase_name(p));
  w.attr("phases", fmt::format("{}", fmt::join(phase_names, " ")));
  if (m.subjects.empty()) {
    w.empty();
  } else {
    w.children();
    for (const auto& s : m.subjects) {
      w.open("subject");
      w.text("subject", s);
    }
    w.close("meta");
  }

  w.open("characters");
  if (book.characters.empty()) {
    w.empty();
  } else {
    w.children();
    for (const auto& c : book.characters) {
      w.open("character");
      w.attr("id", c.id);
      w.attr("name", c.canonical_name);
      w.attr("gender", gender_name(c.gender));
      w.attr("count", c.count());
      w.attr("gcc", c.gcc);
      w.attr("fpcc", c.fpcc);
      w.attr("spcc", c.spcc);
      w.children();
      for (const auto& [alias, n] : c.aliases) {
        w.open("alias");
        w.attr("count", n);
        w.text("alias", alias);
      }
      w.open("mentions");
      w.text("mentions", fmt::format("{}", fmt::join(c.mentions, " ")));
      w.close("character");
    }
    w.close("characters");
  }

  w.open("quotes");
  if (book.quotes.empty()) {
    w.empty();
  } else {
    w.children();
    for (const auto& q : book.quotes) {
      w.open("quote");
      w.attr("id", q.id);
      w.attr("start", q.start);
      w.attr("end", q.end);
      w.attr("speaker", q.speaker);
      w.attr("addressee", q.addressee);
      w.empty();
    }
    w.close("quotes");
  }

  write_blocks(w, "front", book.front);

  w.open("body");
  if (!book.lead.empty()) w.attr("lead", book.lead);
  if (!book.raw_body && book.body.empty()) {
    w.empty();
  } else {
    w.children();
    if (book.raw_body) {
      w.open("raw");
      w.text("raw", *book.raw_body);
    }
    for (const auto& section : book.body) write_section(w, section);
    w.close("body");
  }

  write_blocks(w, "back", book.back);
  w.close("book");
  return out;
}

AnnotatedBook parse(std::string_view xml) {
  const auto root = Parser(xml).document();
  if (root->name != "book") View::unknown(*root);
  View rv(*root);
  if (rv.req("version") != "1") rv.fail("unsupported version");
  rv.done();
  rv.no_text();

  AnnotatedBook book;
  static constexpr std::array<std::string_view, 6> kOrder = {"meta",   "characters", "quotes",
                                                             "front",  "body",       "back"};
  if (root->children.size() != kOrder.size()) {
    rv.fail(fmt::format("expected {} child elements, found {}", kOrder.size(), root->children.size()));
  }
  for (std::size_t i = 0; i < kOrder.size(); ++i) {
    const Node& child = *root->children[i];
    if (child.name != kOrder[i]) {
      View(child).fail(fmt::format("expected <{}> at this position", kOrder[i]));
    }
  }
  book.meta = read_meta(*root->children[0]);
  {
    View v(*root->children[1]);
    v.done();
    v.no_text();
    for (const Node* c : v.children("character")) book.characters.push_back(read_character(*c));
  }
  {
    View v(*root->children[2]);
    v.done();
    v.no_text();
    for (const Node* q : v.children("quote")) book.quotes.push_back(read_quote(*q));
  }
  book.front = read_blocks(*root->children[3]);
  {
    const Node& body = *root->children[4];
    View v(body);
    book.lead = v.opt("lead").value_or("");
    v.done();
    v.no_text();
    for (const auto& child : body.children) {
      if (child->name == "raw") {
        if (book.raw_body || !book.body.empty()) View(*child).fail("raw must come first");
        View cv(*child);
        cv.done();
        book.raw_body = cv.text();
      } else if (child->name == "section") {
        book.body.push_back(read_section(*child));
      } else {
        View::unknown(*child);
      }
    }
  }
  book.back = read_blocks(*root->children[5]);
  check_invariants(book);
  return book;
}

AnnotatedBook read_book(const std::filesystem::path& path) {
  const std::string xml = read_file(path);
  try {
    return parse(xml);
  } catch (const Error& e) {
    throw Error(e.code(), fmt::format("{}: {}", path.string(), e.what()));
  }
}

BookMeta read_book_meta(const std::filesystem::path& path) {
  const std::string xml = read_file(path);
  try {
    const auto begin = xml.find("<meta");
    if (begin == std::string::npos) throw Error(ErrorCode::kParse, "no <meta> element");
    const auto open_end = xml.find('>', begin);
    if (open_end == std::string::npos) throw Error(ErrorCode::kParse, "unterminated <meta>");
    std::size_t end = open_end + 1;
    if (xml[open_end - 1] != '/') {
      const auto close = xml.find("</meta>", open_end);
      if (close == std::string::npos) throw Error(ErrorCode::kParse, "unterminated <meta>");
      end = close + 7;
    }
    const auto root = Parser(std::string_view(xml).substr(begin, end - begin)).document();
    return read_meta(*root);
  } catch (const Error& e) {
    throw Error(e.code(), fmt::format("{}: {}", path.string(), e.what()));
  }
}

}  // namespace novelscope
