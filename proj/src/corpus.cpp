#include "quasilab/corpus.hpp"

#include <utility>

#include "quasilab/error.hpp"

namespace quasilab {

namespace {

const std::vector<std::pair<std::string, std::string>>& entries() {
  static const std::vector<std::pair<std::string, std::string>> table = {
    {"lattice2", R"(# two-element lattice
algebra lattice2
elements 0 1
op meet/2
0 0
0 1
op join/2
0 1
1 1
end
)"},
    {"chain3", R"(# three-element chain lattice 0 < 1 < 2
algebra chain3
elements 0 1 2
op meet/2
0 0 0
0 1 1
0 1 2
op join/2
0 1 2
1 1 2
2 2 2
end
)"},
    {"m2", R"(# two-element de Morgan (Boolean) algebra
algebra m2
elements 0 1
op meet/2
0 0
0 1
op join/2
0 1
1 1
op neg/1
1 0
op c0/0
0
op c1/0
1
end
)"},
    {"bool2", R"(# two-element Boolean algebra
algebra bool2
elements 0 1
op meet/2
0 0
0 1
op join/2
0 1
1 1
op neg/1
1 0
op c0/0
0
op c1/0
1
end
)"},
    {"m3", R"(# three-element Kleene algebra, chain 0 < a < 1, neg(a) = a
algebra m3
elements 0 a 1
op meet/2
0 0 0
0 a a
0 a 1
op join/2
0 a 1
a a 1
1 1 1
op neg/1
1 a 0
op c0/0
0
op c1/0
1
end
)"},
    {"m4", R"(# four-element de Morgan algebra on the square 0 < a, b < 1, neg fixes a and b
algebra m4
elements 0 a b 1
op meet/2
0 0 0 0
0 a 0 a
0 0 b b
0 a b 1
op join/2
0 a b 1
a a 1 1
b 1 b 1
1 1 1 1
op neg/1
1 a b 0
op c0/0
0
op c1/0
1
end
)"},
    {"z2", R"(# cyclic group of order 2
algebra z2
elements 0 1
op add/2
0 1
1 0
op neg/1
0 1
op zero/0
0
end
)"},
    {"z4", R"(# cyclic group of order 4
algebra z4
elements 0 1 2 3
op add/2
0 1 2 3
1 2 3 0
2 3 0 1
3 0 1 2
op neg/1
0 3 2 1
op zero/0
0
end
)"},
    {"impl2", R"(# two-element implication algebra (implication reduct of the Boolean algebra)
algebra impl2
elements 0 1
op imp/2
1 1
0 1
end
)"},
    {"heyting3", R"(# three-element Heyting chain 0 < a < 1
algebra heyting3
elements 0 a 1
op meet/2
0 0 0
0 a a
0 a 1
op join/2
0 a 1
a a 1
1 1 1
op imp/2
1 1 1
0 1 1
0 a 1
op c0/0
0
op c1/0
1
end
)"},
    {"hilbert4", R"(# four-element Hilbert algebra: implication reduct of the Goedel chain 0 < a < b < 1
algebra hilbert4
elements 0 a b 1
op imp/2
1 1 1 1
0 1 1 1
0 a 1 1
0 a b 1
end
)"},
    {"fano", R"(# lattice of subspaces of Z2^3: bottom, 7 points p<v>, 7 lines l<abc>, top
algebra fano
elements 0 p1 p2 p3 p4 p5 p6 p7 l123 l145 l167 l246 l257 l347 l356 1
op meet/2
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
0 p1 0 0 0 0 0 0 p1 p1 p1 0 0 0 0 p1
0 0 p2 0 0 0 0 0 p2 0 0 p2 p2 0 0 p2
0 0 0 p3 0 0 0 0 p3 0 0 0 0 p3 p3 p3
0 0 0 0 p4 0 0 0 0 p4 0 p4 0 p4 0 p4
0 0 0 0 0 p5 0 0 0 p5 0 0 p5 0 p5 p5
0 0 0 0 0 0 p6 0 0 0 p6 p6 0 0 p6 p6
0 0 0 0 0 0 0 p7 0 0 p7 0 p7 p7 0 p7
0 p1 p2 p3 0 0 0 0 l123 p1 p1 p2 p2 p3 p3 l123
0 p1 0 0 p4 p5 0 0 p1 l145 p1 p4 p5 p4 p5 l145
0 p1 0 0 0 0 p6 p7 p1 p1 l167 p6 p7 p7 p6 l167
0 0 p2 0 p4 0 p6 0 p2 p4 p6 l246 p2 p4 p6 l246
0 0 p2 0 0 p5 0 p7 p2 p5 p7 p2 l257 p7 p5 l257
0 0 0 p3 p4 0 0 p7 p3 p4 p7 p4 p7 l347 p3 l347
0 0 0 p3 0 p5 p6 0 p3 p5 p6 p6 p5 p3 l356 l356
0 p1 p2 p3 p4 p5 p6 p7 l123 l145 l167 l246 l257 l347 l356 1
op join/2
0 p1 p2 p3 p4 p5 p6 p7 l123 l145 l167 l246 l257 l347 l356 1
p1 p1 l123 l123 l145 l145 l167 l167 l123 l145 l167 1 1 1 1 1
p2 l123 p2 l123 l246 l257 l246 l257 l123 1 1 l246 l257 1 1 1
p3 l123 l123 p3 l347 l356 l356 l347 l123 1 1 1 1 l347 l356 1
p4 l145 l246 l347 p4 l145 l246 l347 1 l145 1 l246 1 l347 1 1
p5 l145 l257 l356 l145 p5 l356 l257 1 l145 1 1 l257 1 l356 1
p6 l167 l246 l356 l246 l356 p6 l167 1 1 l167 l246 1 1 l356 1
p7 l167 l257 l347 l347 l257 l167 p7 1 1 l167 1 l257 l347 1 1
l123 l123 l123 l123 1 1 1 1 l123 1 1 1 1 1 1 1
l145 l145 1 1 l145 l145 1 1 1 l145 1 1 1 1 1 1
l167 l167 1 1 1 1 l167 l167 1 1 l167 1 1 1 1 1
l246 1 l246 1 l246 1 l246 1 1 1 1 l246 1 1 1 1
l257 1 l257 1 1 l257 1 l257 1 1 1 1 l257 1 1 1
l347 1 1 l347 l347 1 1 l347 1 1 1 1 1 l347 1 1
l356 1 1 l356 1 l356 l356 1 1 1 1 1 1 1 l356 1
1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1
end
)"},
    {"sigma3", R"(# p(a,b,c) = c if a != b, p(a,a,c) = s(a) with s the transposition (0 1)
algebra sigma3
elements 0 1 2
op p/3
1 1 1
0 1 2
0 1 2
0 1 2
0 0 0
0 1 2
0 1 2
0 1 2
2 2 2
end
)"},
    {"trivial", R"(# one-element lattice
algebra trivial
elements 0
op meet/2
0
op join/2
0
end
)"},
  };
  return table;
}

std::string_view resolve(std::string_view name) {
  if (name == "kleene3") return "m3";
  return name;
}

}  // namespace

std::string corpus_text(std::string_view name) {
  auto key = resolve(name);
  for (const auto& [k, text] : entries())
    if (k == key) return text;
  throw Error("unknown corpus algebra '" + std::string(name) + "'");
}

Algebra corpus(std::string_view name) { return parse_algebra(corpus_text(name)); }

std::string corpus_note(std::string_view name) {
  auto text = corpus_text(name);
  std::string note;
  std::size_t pos = 0;
  while (pos < text.size() && text[pos] == '#') {
    auto eol = text.find('\n', pos);
    if (!note.empty()) note += ' ';
    note += text.substr(pos + 2, eol - pos - 2);
    pos = eol + 1;
  }
  return note;
}

std::vector<std::string> corpus_names() {
  std::vector<std::string> out;
  for (const auto& [k, text] : entries()) out.push_back(k);
  return out;
}

}  // namespace quasilab
