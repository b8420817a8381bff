#include "confkernel/textio.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "confkernel/parser.hpp"

namespace confkernel {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<SourceLine> split_lines(std::string_view text) {
  std::vector<SourceLine> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++number;
    pos = end + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::string t = trim(line);
    if (t.empty()) {
      if (end == text.size()) break;
      continue;
    }
    SourceLine sl{number, {}, {}};
    std::string head = t;
    if (auto eq = t.find('='); eq != std::string::npos) {
      head = t.substr(0, eq);
      sl.rhs = trim(std::string_view(t).substr(eq + 1));
      if (sl.rhs.empty()) sl.rhs = " ";  // marks "= <nothing>" for the caller to reject
    }
    std::istringstream ws(head);
    for (std::string w; ws >> w;) sl.words.push_back(w);
    out.push_back(std::move(sl));
    if (end == text.size()) break;
  }
  return out;
}

PolyVec parse_linear(std::string_view rhs, const std::vector<std::string>& names,
                     const RingPtr& ring) {
  for (const auto& n : names)
    if (ring->find(n))
      throw std::invalid_argument("name '" + n + "' collides with a ring indeterminate");
  RingPtr ext = ring->with_parameters(names);
  Polynomial p = parse(rhs, ext);
  std::vector<std::size_t> idx;
  for (const auto& n : names) idx.push_back(ext->index(n));
  PolyVec out(names.size(), Polynomial(ring));
  for (const auto& [e, c] : p.terms()) {
    std::size_t which = names.size();
    std::uint32_t total = 0;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      total += e[idx[k]];
      if (e[idx[k]]) which = k;
    }
    if (total != 1)
      throw std::invalid_argument("each term must contain exactly one of the basis names");
    Exponents rest(ring->size(), 0);
    for (std::size_t v = 0; v < ring->size(); ++v) rest[v] = e[ext->index(ring->var(v).name)];
    out[which] += Polynomial::monomial(ring, rest, c);
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

}  // namespace confkernel
