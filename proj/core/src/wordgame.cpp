#include "muipc/wordgame.hpp"

#include <algorithm>

#include "muipc/ordinals.hpp"

namespace muipc {

void Alphabets::validate() const {
  for (const std::string& a : A)
    if (B.count(a)) throw DomainError("alphabets must be disjoint; '" + a + "' is in both");
  if (A.count(x) || B.count(x))
    throw DomainError("the fixed-point variable cannot be an alphabet atom");
}

namespace {

bool atoms_only(const Formula& f, const std::set<std::string>& allowed) {
  if (f.is(Kind::Var)) return allowed.count(f.name()) != 0;
  if (f.is(Kind::And)) {
    for (const Formula& c : f.children())
      if (!c.is(Kind::Var) || !allowed.count(c.name())) return false;
    return true;
  }
  return false;
}

void collect_positions(const Formula& f, const std::string& x, std::set<std::string>& head,
                       std::set<std::string>& side, bool& ok) {
  if (!ok) return;
  switch (f.kind()) {
    case Kind::Var:
      ok = f.name() == x;
      return;
    case Kind::Imp: {
      const Formula& a = f.antecedent();
      if (a.is(Kind::Var)) {
        head.insert(a.name());
      } else if (a.is(Kind::And)) {
        for (const Formula& c : a.children()) {
          if (!c.is(Kind::Var)) {
            ok = false;
            return;
          }
          head.insert(c.name());
        }
      } else {
        ok = false;
        return;
      }
      collect_positions(f.consequent(), x, head, side, ok);
      return;
    }
    case Kind::Or: {
      bool has_x = false;
      for (const Formula& c : f.children()) {
        if (c.has_free(x)) {
          has_x = true;
          collect_positions(c, x, head, side, ok);
        } else if (c.is(Kind::Var)) {
          side.insert(c.name());
        } else {
          ok = false;
          return;
        }
      }
      ok = ok && has_x;
      return;
    }
    default:
      ok = false;
      return;
  }
}

}  // namespace

Alphabets infer_alphabets(const std::vector<Formula>& fs, const std::string& x) {
  Alphabets ab;
  ab.x = x;
  for (const Formula& f : fs) {
    bool ok = true;
    collect_positions(f, x, ab.A, ab.B, ok);
    if (!ok || ab.A.count(x) || ab.B.count(x))
      throw DomainError("formula is outside the fragment: " + f.to_string());
  }
  ab.validate();
  for (const Formula& f : fs)
    if (!in_fragment(f, ab))
      throw DomainError("formula is outside the fragment: " + f.to_string());
  return ab;
}

bool in_fragment(const Formula& f, const Alphabets& ab) {
  switch (f.kind()) {
    case Kind::Var:
      return f.name() == ab.x;
    case Kind::Imp:
      return atoms_only(f.antecedent(), ab.A) && in_fragment(f.consequent(), ab);
    case Kind::Or: {
      bool has_x = false;
      for (const Formula& c : f.children()) {
        if (c.has_free(ab.x)) {
          has_x = true;
          if (!in_fragment(c, ab)) return false;
        } else if (!c.is(Kind::Var) || !ab.B.count(c.name())) {
          return false;
        }
      }
      return has_x;
    }
    default:
      return false;
  }
}

SuppPair supp(const Formula& f, const Alphabets& ab) {
  if (!in_fragment(f, ab))
    throw DomainError("supp: formula is outside the fragment: " + f.to_string());
  SuppPair s;
  switch (f.kind()) {
    case Kind::Var:
      return s;
    case Kind::Imp: {
      const Formula& a = f.antecedent();
      if (a.is(Kind::Var)) s.A.insert(a.name());
      else
        for (const Formula& c : a.children()) s.A.insert(c.name());
      SuppPair inner = supp(f.consequent(), ab);
      s.A.insert(inner.A.begin(), inner.A.end());
      s.B = std::move(inner.B);
      return s;
    }
    case Kind::Or: {
      for (const Formula& c : f.children()) {
        if (c.has_free(ab.x)) {
          SuppPair inner = supp(c, ab);
          s.A.insert(inner.A.begin(), inner.A.end());
          s.B.insert(inner.B.begin(), inner.B.end());
        } else {
          s.B.insert(c.name());
        }
      }
      return s;
    }
    default:
      return s;  // unreachable: in_fragment checked
  }
}

Formula letter_formula(const SuppPair& letter, const std::string& x) {
  std::vector<Formula> head, side;
  for (const std::string& a : letter.A) head.push_back(Formula::var(a));
  for (const std::string& b : letter.B) side.push_back(Formula::var(b));
  side.push_back(Formula::var(x));
  return Formula::imp(Formula::conj(std::move(head)), Formula::disj(std::move(side)));
}

Formula word_formula(const Word& w, const std::string& x) {
  Formula acc = Formula::var(x);
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    acc = substitute(letter_formula(*it, x), x, acc);
  return acc;
}

std::set<Word> branches(const Formula& f, const Alphabets& ab) {
  if (!in_fragment(f, ab))
    throw DomainError("branches: formula is outside the fragment: " + f.to_string());
  switch (f.kind()) {
    case Kind::Var:
      return {Word{}};
    case Kind::Imp: {
      SuppPair letter;
      const Formula& a = f.antecedent();
      if (a.is(Kind::Var)) letter.A.insert(a.name());
      else
        for (const Formula& c : a.children()) letter.A.insert(c.name());
      std::set<Word> out;
      for (const Word& w : branches(f.consequent(), ab)) {
        Word prefixed{letter};
        prefixed.insert(prefixed.end(), w.begin(), w.end());
        out.insert(std::move(prefixed));
      }
      return out;
    }
    case Kind::Or: {
      SuppPair letter;  // the side atoms of this disjunction, if any
      std::set<Word> inner;
      for (const Formula& c : f.children()) {
        if (c.has_free(ab.x)) {
          std::set<Word> sub = branches(c, ab);
          inner.insert(sub.begin(), sub.end());
        } else {
          letter.B.insert(c.name());
        }
      }
      if (letter.B.empty()) return inner;
      std::set<Word> out;
      for (const Word& w : inner) {
        Word prefixed{letter};
        prefixed.insert(prefixed.end(), w.begin(), w.end());
        out.insert(std::move(prefixed));
      }
      return out;
    }
    default:
      return {};
  }
}

Formula br(const Formula& f, const Alphabets& ab) {
  std::vector<Formula> parts;
  for (const Word& w : branches(f, ab)) parts.push_back(word_formula(w, ab.x));
  return Formula::disj(std::move(parts));
}

bool is_star_formula(const Formula& f, const Alphabets& ab) { return br(f, ab) == f; }

bool triangle_less(const SuppPair& p, const Word& w) {
  const std::size_t k = w.size();
  for (std::size_t l = 0; l <= k; ++l) {
    std::set<std::string> heads;
    for (std::size_t j = 0; j < l; ++j) heads.insert(w[j].A.begin(), w[j].A.end());
    if (!std::includes(heads.begin(), heads.end(), p.A.begin(), p.A.end())) continue;
    std::set<std::string> sides;
    // positions l..k, with position l meaning the letter at index l-1 is
    // shared between the prefix and the suffix
    for (std::size_t j = (l == 0 ? 0 : l - 1); j < k; ++j)
      sides.insert(w[j].B.begin(), w[j].B.end());
    if (std::includes(sides.begin(), sides.end(), p.B.begin(), p.B.end())) return true;
  }
  return false;
}

Formula closed_form(const std::vector<Formula>& fs, const Alphabets& ab, Prover* verify_with) {
  std::vector<Formula> parts;
  parts.reserve(fs.size());
  for (const Formula& f : fs) parts.push_back(letter_formula(supp(f, ab), ab.x));
  Formula result = Formula::conj(parts);
  if (verify_with) {
    Formula whole = Formula::conj(fs);
    unsigned rho = ruitenburg_number(whole, ab.x, *verify_with);
    Formula iterated = iterate(whole, ab.x, rho, Formula::var(ab.x));
    if (!verify_with->equiv(result, iterated))
      throw Error("closed form does not match the rho-th iterate of " + whole.to_string());
  }
  return result;
}

// ---------------------------------------------------------------------------
// The game
// ---------------------------------------------------------------------------

namespace {

struct GameTable {
  std::vector<std::vector<Word>> words;       // [conjunct][disjunct]
  std::vector<SuppPair> conjunct_supports;    // supp of each conjunct
};

struct Search {
  const GameTable& table;
  unsigned rounds;
  const GameLimits& limits;
  std::uint64_t positions = 0;
  std::vector<std::pair<int, int>> play;

  bool eve_wins_from(Word& history, const SuppPair& memory, unsigned round);
};

SuppPair supp_of_word(const Word& w) {
  SuppPair s;
  for (const SuppPair& l : w) {
    s.A.insert(l.A.begin(), l.A.end());
    s.B.insert(l.B.begin(), l.B.end());
  }
  return s;
}

bool subset(const std::set<std::string>& a, const std::set<std::string>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// True when some conjunct's support is covered by the history; covered
// positions stay covered under extension, so the subtree is already won.
bool eve_won(const GameTable& table, const Word& history) {
  for (const SuppPair& s : table.conjunct_supports)
    if (triangle_less(s, history)) return true;
  return false;
}

bool Search::eve_wins_from(Word& history, const SuppPair& memory, unsigned round) {
  if (++positions > limits.max_positions)
    throw Error("game search budget exceeded");
  if (eve_won(table, history)) return true;
  if (round == rounds) return false;

  const int conjuncts = static_cast<int>(table.words.size());
  for (int i = 0; i < conjuncts; ++i) {
    // Eve's reply: first a disjunct whose head support adds a new atom (the
    // side memory resets), otherwise one whose side support adds a new atom,
    // otherwise the first disjunct.
    const std::vector<Word>& row = table.words[static_cast<std::size_t>(i)];
    int choice = -1;
    SuppPair next_memory = memory;
    for (std::size_t j = 0; j < row.size(); ++j) {
      SuppPair ws = supp_of_word(row[j]);
      if (!subset(ws.A, memory.A)) {
        choice = static_cast<int>(j);
        next_memory.A.insert(ws.A.begin(), ws.A.end());
        next_memory.B.clear();
        break;
      }
    }
    if (choice < 0) {
      for (std::size_t j = 0; j < row.size(); ++j) {
        SuppPair ws = supp_of_word(row[j]);
        if (!subset(ws.B, memory.B)) {
          choice = static_cast<int>(j);
          next_memory.B.insert(ws.B.begin(), ws.B.end());
          break;
        }
      }
    }
    if (choice < 0) {
      choice = 0;
      next_memory = memory;
    }

    const Word& picked = row[static_cast<std::size_t>(choice)];
    std::size_t mark = history.size();
    history.insert(history.end(), picked.begin(), picked.end());
    bool won = eve_wins_from(history, next_memory, round + 1);
    history.resize(mark);
    if (!won) {
      // unwinds along the first losing Adam line, so this builds one play
      play.insert(play.begin(), {i, choice});
      return false;
    }
  }
  return true;
}

}  // namespace

GameResult play_game(const std::vector<Formula>& star_conjuncts, unsigned rounds,
                     const Alphabets& ab, const GameLimits& limits) {
  if (star_conjuncts.empty()) throw DomainError("play_game needs at least one conjunct");
  GameTable table;
  std::size_t width = 1;
  for (const Formula& f : star_conjuncts) {
    if (!is_star_formula(f, ab))
      throw DomainError("play_game: not a star formula: " + f.to_string());
    std::set<Word> ws = branches(f, ab);
    table.words.emplace_back(ws.begin(), ws.end());
    table.conjunct_supports.push_back(supp(f, ab));
    width = std::max(width, ws.size());
  }
  // Pad rows to a common width with the empty word (f is equivalent to
  // f \/ x as a game row; the empty word adds nothing to any support).
  for (auto& row : table.words)
    while (row.size() < width) row.push_back(Word{});

  Search search{table, rounds, limits, 0, {}};
  Word history;
  GameResult result;
  result.eve_wins_all = search.eve_wins_from(history, SuppPair{}, 0);
  result.positions = search.positions;
  if (!result.eve_wins_all) result.losing_play = search.play;
  return result;
}

}  // namespace muipc
