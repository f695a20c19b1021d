#include "svsm/porter_stemmer.hpp"

#include <initializer_list>
#include <utility>

namespace svsm {
namespace {

// Working state mirrors the reference implementation: the word lives in
// b_[0..k_], and j_ marks the end of the stem once a suffix has matched.
class Stemmer {
 public:
  explicit Stemmer(std::string_view word) : b_(word) {
    k_ = static_cast<int>(b_.size()) - 1;
  }

  std::string run() {
    if (k_ < 0) return {};
    step1ab();
    if (k_ > 0) {
      step1c();
      step2();
      step3();
      step4();
      step5();
    }
    b_.resize(static_cast<std::size_t>(k_ + 1));
    return std::move(b_);
  }

 private:
  bool cons(int i) const {
    switch (b_[static_cast<std::size_t>(i)]) {
      case 'a': case 'e': case 'i': case 'o': case 'u':
        return false;
      case 'y':
        return i == 0 ? true : !cons(i - 1);
      default:
        return true;
    }
  }

  // Number of VC sequences in b_[0..j_].
  int m() const {
    int n = 0;
    int i = 0;
    for (;;) {
      if (i > j_) return n;
      if (!cons(i)) break;
      ++i;
    }
    ++i;
    for (;;) {
      for (;;) {
        if (i > j_) return n;
        if (cons(i)) break;
        ++i;
      }
      ++i;
      ++n;
      for (;;) {
        if (i > j_) return n;
        if (!cons(i)) break;
        ++i;
      }
      ++i;
    }
  }

  bool vowel_in_stem() const {
    for (int i = 0; i <= j_; ++i)
      if (!cons(i)) return true;
    return false;
  }

  bool double_cons(int j) const {
    if (j < 1) return false;
    if (b_[static_cast<std::size_t>(j)] != b_[static_cast<std::size_t>(j - 1)]) return false;
    return cons(j);
  }

  // consonant-vowel-consonant ending at i, last consonant not w, x or y.
  bool cvc(int i) const {
    if (i < 2 || !cons(i) || cons(i - 1) || !cons(i - 2)) return false;
    const char ch = b_[static_cast<std::size_t>(i)];
    return ch != 'w' && ch != 'x' && ch != 'y';
  }

  bool ends(std::string_view s) {
    const int len = static_cast<int>(s.size());
    if (len > k_ + 1) return false;
    if (std::string_view(b_).substr(static_cast<std::size_t>(k_ - len + 1), s.size()) != s)
      return false;
    j_ = k_ - len;
    return true;
  }

  void set_to(std::string_view s) {
    b_.replace(static_cast<std::size_t>(j_ + 1), static_cast<std::size_t>(k_ - j_), s);
    k_ = j_ + static_cast<int>(s.size());
  }

  void replace_if_measured(std::string_view s) {
    if (m() > 0) set_to(s);
  }

  char at(int i) const { return b_[static_cast<std::size_t>(i)]; }

  // Tries each (suffix, replacement) in order; the first matching suffix
  // decides, whether or not its measure condition holds.
  void rule_table(std::initializer_list<std::pair<std::string_view, std::string_view>> rules) {
    for (const auto& [suffix, repl] : rules) {
      if (ends(suffix)) {
        replace_if_measured(repl);
        return;
      }
    }
  }

  void step1ab() {
    if (at(k_) == 's') {
      if (ends("sses")) {
        k_ -= 2;
      } else if (ends("ies")) {
        set_to("i");
      } else if (k_ >= 1 && at(k_ - 1) != 's') {
        --k_;
      }
    }
    if (k_ < 0) return;
    if (ends("eed")) {
      if (m() > 0) --k_;
    } else if ((ends("ed") || ends("ing")) && vowel_in_stem()) {
      k_ = j_;
      if (ends("at")) {
        set_to("ate");
      } else if (ends("bl")) {
        set_to("ble");
      } else if (ends("iz")) {
        set_to("ize");
      } else if (double_cons(k_)) {
        --k_;
        const char ch = at(k_);
        if (ch == 'l' || ch == 's' || ch == 'z') ++k_;
      } else {
        j_ = k_;
        if (m() == 1 && cvc(k_)) set_to("e");
      }
    }
  }

  void step1c() {
    if (ends("y") && vowel_in_stem()) b_[static_cast<std::size_t>(k_)] = 'i';
  }

  void step2() {
    if (k_ < 1) return;
    switch (at(k_ - 1)) {
      case 'a': rule_table({{"ational", "ate"}, {"tional", "tion"}}); break;
      case 'c': rule_table({{"enci", "ence"}, {"anci", "ance"}}); break;
      case 'e': rule_table({{"izer", "ize"}}); break;
      case 'l':
        rule_table({{"abli", "able"}, {"alli", "al"}, {"entli", "ent"}, {"eli", "e"}, {"ousli", "ous"}});
        break;
      case 'o': rule_table({{"ization", "ize"}, {"ation", "ate"}, {"ator", "ate"}}); break;
      case 's':
        rule_table({{"alism", "al"}, {"iveness", "ive"}, {"fulness", "ful"}, {"ousness", "ous"}});
        break;
      case 't': rule_table({{"aliti", "al"}, {"iviti", "ive"}, {"biliti", "ble"}}); break;
      default: break;
    }
  }

  void step3() {
    switch (at(k_)) {
      case 'e': rule_table({{"icate", "ic"}, {"ative", ""}, {"alize", "al"}}); break;
      case 'i': rule_table({{"iciti", "ic"}}); break;
      case 'l': rule_table({{"ical", "ic"}, {"ful", ""}}); break;
      case 's': rule_table({{"ness", ""}}); break;
      default: break;
    }
  }

  void step4() {
    if (k_ < 1) return;
    bool matched = false;
    auto any_of = [&](std::initializer_list<std::string_view> suffixes) {
      for (auto s : suffixes)
        if (ends(s)) return true;
      return false;
    };
    switch (at(k_ - 1)) {
      case 'a': matched = any_of({"al"}); break;
      case 'c': matched = any_of({"ance", "ence"}); break;
      case 'e': matched = any_of({"er"}); break;
      case 'i': matched = any_of({"ic"}); break;
      case 'l': matched = any_of({"able", "ible"}); break;
      case 'n': matched = any_of({"ant", "ement", "ment", "ent"}); break;
      case 'o':
        if (ends("ion") && j_ >= 0 && (at(j_) == 's' || at(j_) == 't')) {
          matched = true;
        } else {
          matched = any_of({"ou"});
        }
        break;
      case 's': matched = any_of({"ism"}); break;
      case 't': matched = any_of({"ate", "iti"}); break;
      case 'u': matched = any_of({"ous"}); break;
      case 'v': matched = any_of({"ive"}); break;
      case 'z': matched = any_of({"ize"}); break;
      default: break;
    }
    if (matched && m() > 1) k_ = j_;
  }

  void step5() {
    j_ = k_;
    if (at(k_) == 'e') {
      const int a = m();
      if (a > 1 || (a == 1 && !cvc(k_ - 1))) --k_;
    }
    if (at(k_) == 'l' && double_cons(k_)) {
      j_ = k_;
      if (m() > 1) --k_;
    }
  }

  std::string b_;
  int k_ = -1;
  int j_ = 0;
};

}  // namespace

std::string porter_stem(std::string_view word) {
  // As in Porter's own implementation, one- and two-letter words pass through.
  if (word.size() <= 2) return std::string(word);
  return Stemmer(word).run();
}

}  // namespace svsm
