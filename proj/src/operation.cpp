#include "steenrod/operation.h"

#include "steenrod/errors.h"

#include <algorithm>
#include <functional>
#include <mutex>
#include <shared_mutex>
#include <sstream>

namespace steenrod {

Bidegree letter_bidegree(int letter, int p)
{
    if (letter == kBeta)
        return {1, 0};
    return {2 * letter * (p - 1), letter * (p - 1)};
}

Bidegree bidegree(const Word& word, int p)
{
    Bidegree d;
    for (int l : word)
        d += letter_bidegree(l, p);
    return d;
}

std::optional<Word> reduce_word(const Word& word)
{
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (word[i] < 0)
            throw InvalidInput("negative power operation index");
        if (word[i] == kBeta && i + 1 < word.size() && word[i + 1] == kBeta)
            return std::nullopt;
    }
    return word;
}

bool WordOrder::operator()(const Word& a, const Word& b) const
{
    Bidegree da = bidegree(a, p), db = bidegree(b, p);
    if (da != db)
        return da < db;
    if (a.size() != b.size())
        return a.size() < b.size();
    return a < b;
}

bool is_admissible(const Word& word, int p)
{
    for (std::size_t i = 0; i + 1 < word.size(); ++i) {
        int a = word[i];
        if (a == kBeta) {
            if (word[i + 1] == kBeta)
                return false;
            continue;
        }
        if (word[i + 1] != kBeta) {
            if (a < p * word[i + 1])
                return false;
        }
        else if (i + 2 < word.size()) {
            if (word[i + 2] == kBeta)
                return false;
            if (a < p * word[i + 2] + 1)
                return false;
        }
    }
    return true;
}

std::string word_to_string(const Word& word)
{
    if (word.empty())
        return "1";
    std::string s;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i)
            s += ' ';
        s += word[i] == kBeta ? std::string("beta") : "P^" + std::to_string(word[i]);
    }
    return s;
}

/* ---------------- OpElement ---------------- */

OpElement OpElement::monomial(const Word& word, Prime p, int64_t coefficient)
{
    OpElement e(p);
    e.add(word, Fp(coefficient, p));
    return e;
}

void OpElement::add(const Word& word, Fp c)
{
    if (c.is_zero())
        return;
    auto reduced = reduce_word(word);
    if (!reduced)
        return;
    auto [it, inserted] = terms_.try_emplace(std::move(*reduced), c.value());
    if (!inserted) {
        Fp sum = Fp(it->second, p_) + c;
        if (sum.is_zero())
            terms_.erase(it);
        else
            it->second = sum.value();
    }
}

OpElement OpElement::operator+(const OpElement& o) const
{
    if (!(p_ == o.p_))
        throw InvalidInput("prime mismatch");
    OpElement r = *this;
    for (const auto& [w, c] : o.terms_)
        r.add(w, Fp(c, p_));
    return r;
}

OpElement OpElement::operator-(const OpElement& o) const
{
    return *this + (-o);
}

OpElement OpElement::operator-() const
{
    return scaled(Fp(-1, p_));
}

OpElement OpElement::scaled(Fp c) const
{
    OpElement r(p_);
    for (const auto& [w, v] : terms_)
        r.add(w, Fp(v, p_) * c);
    return r;
}

std::optional<Bidegree> OpElement::homogeneous_degree() const
{
    if (terms_.empty())
        return std::nullopt;
    Bidegree d = bidegree(terms_.begin()->first, p_.value());
    for (const auto& [w, c] : terms_)
        if (bidegree(w, p_.value()) != d)
            return std::nullopt;
    return d;
}

std::string OpElement::to_string() const
{
    if (terms_.empty())
        return "0";
    std::string s;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        if (!first)
            s += " + ";
        first = false;
        if (c != 1)
            s += std::to_string(c) + (w.empty() ? "" : " ");
        if (c == 1 || !w.empty())
            s += word_to_string(w);
    }
    return s;
}

OpElement sq(int n, Prime p)
{
    if (p.value() != 2)
        throw InvalidInput("Sq^n is only defined for p = 2");
    if (n < 0)
        throw InvalidInput("Sq^n needs n >= 0");
    if (n % 2 == 0)
        return n == 0 ? OpElement::identity(p) : OpElement::power(n / 2, p);
    return n == 1 ? OpElement::beta(p) : OpElement::monomial({kBeta, n / 2}, p);
}

/* ---------------- Adem relations ---------------- */

namespace {

/* Word for P^i with P^0 collapsed to the empty word. */
void append_power(Word& w, int i)
{
    if (i > 0)
        w.push_back(i);
}

std::shared_mutex memo_mutex;
std::map<AdemKey, std::vector<std::pair<Word, uint32_t>>> memo;

}  // namespace

std::vector<std::pair<Word, uint32_t>> adem_expansion(const AdemKey& key)
{
    Prime p(key.p);
    const int q = key.p, a = key.a, b = key.b;
    OpElement e(p);
    if (key.kind == 'P') {
        if (!(a > 0 && b > 0 && a < q * b))
            throw InvalidInput("adem_pp needs 0 < a < p b");
        for (int t = 0; t <= a / q; ++t) {
            Fp c = signed_binom(a + t, int64_t(q - 1) * (b - t) - 1, a - q * t, p);
            Word w;
            append_power(w, a + b - t);
            append_power(w, t);
            e.add(w, c);
        }
    }
    else if (key.kind == 'B') {
        if (!(a > 0 && b > 0 && a <= q * b))
            throw InvalidInput("adem_pb needs 0 < a <= p b");
        for (int t = 0; t <= a / q; ++t) {
            Fp c = signed_binom(a + t, int64_t(q - 1) * (b - t), a - q * t, p);
            Word w{kBeta};
            append_power(w, a + b - t);
            append_power(w, t);
            e.add(w, c);
        }
        for (int t = 0; t <= (a - 1) / q; ++t) {
            Fp c = signed_binom(a + t - 1, int64_t(q - 1) * (b - t) - 1, a - q * t - 1, p);
            Word w;
            append_power(w, a + b - t);
            w.push_back(kBeta);
            append_power(w, t);
            e.add(w, c);
        }
    }
    else {
        throw InvalidInput("unknown Adem relation kind");
    }
    return {e.terms().begin(), e.terms().end()};
}

namespace {

const std::vector<std::pair<Word, uint32_t>>& adem_lookup(const AdemKey& key)
{
    {
        std::shared_lock lock(memo_mutex);
        auto it = memo.find(key);
        if (it != memo.end())
            return it->second;
    }
    auto value = adem_expansion(key);
    std::unique_lock lock(memo_mutex);
    /* std::map nodes are stable, so the reference survives later inserts */
    return memo.try_emplace(key, std::move(value)).first->second;
}

OpElement from_terms(const std::vector<std::pair<Word, uint32_t>>& terms, Prime p)
{
    OpElement e(p);
    for (const auto& [w, c] : terms)
        e.add(w, Fp(c, p));
    return e;
}

}  // namespace

std::map<AdemKey, std::vector<std::pair<Word, uint32_t>>> adem_memo_snapshot()
{
    std::shared_lock lock(memo_mutex);
    return memo;
}

void adem_memo_insert(const AdemKey& key, const std::vector<std::pair<Word, uint32_t>>& terms)
{
    std::unique_lock lock(memo_mutex);
    memo.try_emplace(key, terms);
}

void adem_memo_clear()
{
    std::unique_lock lock(memo_mutex);
    memo.clear();
}

OpElement adem_pp(int a, int b, Prime p)
{
    if (!(a > 0 && b > 0 && a < p.value() * b))
        throw InvalidInput("adem_pp needs 0 < a < p b");
    return from_terms(adem_lookup({p.value(), 'P', a, b}), p);
}

OpElement adem_pb(int a, int b, Prime p)
{
    if (!(a > 0 && b > 0 && a <= p.value() * b))
        throw InvalidInput("adem_pb needs 0 < a <= p b");
    return from_terms(adem_lookup({p.value(), 'B', a, b}), p);
}

/* ---------------- rewriting ---------------- */

namespace {

struct Redex {
    std::size_t pos = 0;
    std::size_t len = 0;
    AdemKey key{};
};

/* Leftmost inadmissible spot of a reduced word (no adjacent betas). */
std::optional<Redex> find_redex(const Word& w, int p)
{
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        int a = w[i];
        if (a == kBeta)
            continue;
        if (w[i + 1] != kBeta) {
            if (a < p * w[i + 1])
                return Redex{i, 2, {p, 'P', a, w[i + 1]}};
        }
        else if (i + 2 < w.size() && a <= p * w[i + 2]) {
            return Redex{i, 3, {p, 'B', a, w[i + 2]}};
        }
    }
    return std::nullopt;
}

constexpr std::size_t kRewriteBudget = 50'000'000;

}  // namespace

OpElement rewrite_to_admissible(const OpElement& e)
{
    const Prime p = e.prime();
    const int q = p.value();
    OpElement result(p);
    /* pending words, processed from the canonical maximum down */
    std::map<Word, uint32_t, WordOrder> pending(WordOrder{q});
    for (const auto& [w, c] : e.terms())
        pending.emplace(w, c);

    std::size_t steps = 0;
    while (!pending.empty()) {
        if (++steps > kRewriteBudget)
            throw VerificationFailure("Adem rewriting exceeded its step budget");
        auto node = pending.extract(std::prev(pending.end()));
        const Word& w = node.key();
        Fp c(node.mapped(), p);
        auto redex = find_redex(w, q);
        if (!redex) {
            result.add(w, c);
            continue;
        }
        for (const auto& [rep, rc] : adem_lookup(redex->key)) {
            Word nw(w.begin(), w.begin() + redex->pos);
            nw.insert(nw.end(), rep.begin(), rep.end());
            nw.insert(nw.end(), w.begin() + redex->pos + redex->len, w.end());
            auto reduced = reduce_word(nw);
            if (!reduced)
                continue;
            Fp add = c * Fp(rc, p);
            auto [it, inserted] = pending.try_emplace(std::move(*reduced), add.value());
            if (!inserted) {
                Fp sum = Fp(it->second, p) + add;
                if (sum.is_zero())
                    pending.erase(it);
                else
                    it->second = sum.value();
            }
        }
    }
    return result;
}

OpElement multiply(const OpElement& e1, const OpElement& e2)
{
    if (!(e1.prime() == e2.prime()))
        throw InvalidInput("prime mismatch in composition");
    const Prime p = e1.prime();
    OpElement product(p);
    for (const auto& [w1, c1] : e1.terms())
        for (const auto& [w2, c2] : e2.terms()) {
            Word w = w1;
            w.insert(w.end(), w2.begin(), w2.end());
            product.add(w, Fp(c1, p) * Fp(c2, p));
        }
    return rewrite_to_admissible(product);
}

/* ---------------- tensors and the coproduct ---------------- */

bool TensorElement::KeyOrder::operator()(const Key& a, const Key& b) const
{
    Bidegree da, db;
    for (const auto& w : a)
        da += bidegree(w, p);
    for (const auto& w : b)
        db += bidegree(w, p);
    if (da != db)
        return da < db;
    WordOrder order{p};
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), order);
}

void TensorElement::add(const Key& key, Fp c)
{
    if (key.size() != arity_)
        throw InvalidInput("tensor arity mismatch");
    if (c.is_zero())
        return;
    auto [it, inserted] = terms_.try_emplace(key, c.value());
    if (!inserted) {
        Fp sum = Fp(it->second, p_) + c;
        if (sum.is_zero())
            terms_.erase(it);
        else
            it->second = sum.value();
    }
}

std::string TensorElement::to_string() const
{
    if (terms_.empty())
        return "0";
    std::string s;
    bool first = true;
    for (const auto& [key, c] : terms_) {
        if (!first)
            s += " + ";
        first = false;
        if (c != 1)
            s += std::to_string(c) + " ";
        for (std::size_t i = 0; i < key.size(); ++i) {
            if (i)
                s += " (x) ";
            s += key[i].size() > 1 ? "(" + word_to_string(key[i]) + ")" : word_to_string(key[i]);
        }
    }
    return s;
}

TensorElement as_tensor(const OpElement& e)
{
    TensorElement t(e.prime(), 1);
    for (const auto& [w, c] : e.terms())
        t.add({w}, Fp(c, e.prime()));
    return t;
}

namespace {

/* Coproduct of one word with unreduced legs, as a list of (left, right, coefficient). */
std::map<std::pair<Word, Word>, uint32_t> raw_coproduct(const Word& word, Prime p)
{
    const int q = p.value();
    std::map<std::pair<Word, Word>, uint32_t> acc{{{Word{}, Word{}}, 1u}};
    for (int letter : word) {
        std::map<std::pair<Word, Word>, uint32_t> next;
        auto push = [&](Word a, Word b, Fp c) {
            if (c.is_zero())
                return;
            auto& slot = next[{std::move(a), std::move(b)}];
            slot = (Fp(slot, p) + c).value();
        };
        for (const auto& [legs, c] : acc) {
            const auto& [a, b] = legs;
            Fp coef(c, p);
            if (letter == kBeta) {
                /* (a x b)(beta x 1) = (-1)^{|b|} a beta x b */
                Word a1 = a;
                a1.push_back(kBeta);
                push(a1, b, bidegree(b, q).t % 2 ? -coef : coef);
                Word b1 = b;
                b1.push_back(kBeta);
                push(a, b1, coef);
            }
            else {
                for (int r = 0; r <= letter; ++r) {
                    Word a1 = a, b1 = b;
                    append_power(a1, r);
                    append_power(b1, letter - r);
                    push(a1, b1, coef);
                }
            }
        }
        std::erase_if(next, [](const auto& kv) { return kv.second == 0; });
        acc = std::move(next);
    }
    return acc;
}

}  // namespace

TensorElement coproduct(const OpElement& e)
{
    const Prime p = e.prime();
    TensorElement result(p, 2);
    for (const auto& [word, c] : e.terms()) {
        for (const auto& [legs, lc] : raw_coproduct(word, p)) {
            OpElement left = rewrite_to_admissible(OpElement::monomial(legs.first, p));
            if (left.is_zero())
                continue;
            OpElement right = rewrite_to_admissible(OpElement::monomial(legs.second, p));
            Fp coef = Fp(c, p) * Fp(lc, p);
            for (const auto& [wl, cl] : left.terms())
                for (const auto& [wr, cr] : right.terms())
                    result.add({wl, wr}, coef * Fp(cl, p) * Fp(cr, p));
        }
    }
    return result;
}

TensorElement coproduct_on_leg(const TensorElement& x, std::size_t leg)
{
    if (leg >= x.arity())
        throw InvalidInput("tensor leg out of range");
    const Prime p = x.prime();
    TensorElement result(p, x.arity() + 1);
    for (const auto& [key, c] : x.terms()) {
        TensorElement split = coproduct(OpElement::monomial(key[leg], p));
        for (const auto& [pair, sc] : split.terms()) {
            TensorElement::Key k;
            k.insert(k.end(), key.begin(), key.begin() + leg);
            k.push_back(pair[0]);
            k.push_back(pair[1]);
            k.insert(k.end(), key.begin() + leg + 1, key.end());
            result.add(k, Fp(c, p) * Fp(sc, p));
        }
    }
    return result;
}

TensorElement counit_on_leg(const TensorElement& x, std::size_t leg)
{
    if (leg >= x.arity() || x.arity() == 0)
        throw InvalidInput("tensor leg out of range");
    TensorElement result(x.prime(), x.arity() - 1);
    for (const auto& [key, c] : x.terms()) {
        if (!key[leg].empty())
            continue;
        TensorElement::Key k = key;
        k.erase(k.begin() + leg);
        result.add(k, Fp(c, x.prime()));
    }
    return result;
}

/* ---------------- Milnor primitives ---------------- */

namespace {

int ipow(int base, int e)
{
    int r = 1;
    while (e-- > 0)
        r *= base;
    return r;
}

}  // namespace

OpElement milnor_q_composite(int n, Prime p)
{
    if (n < 0)
        throw InvalidInput("Q_n needs n >= 0");
    if (n == 0)
        return OpElement::beta(p);
    Word q;
    for (int k = n - 1; k >= 0; --k)
        q.push_back(ipow(p.value(), k));
    Word left = q, right{kBeta};
    left.push_back(kBeta);
    right.insert(right.end(), q.begin(), q.end());
    OpElement e(p);
    e.add(left, Fp(1, p));
    e.add(right, Fp(-1, p));
    return rewrite_to_admissible(e);
}

OpElement milnor_q(int n, Prime p)
{
    if (n < 0)
        throw InvalidInput("Q_n needs n >= 0");
    OpElement q = OpElement::beta(p);
    for (int k = 0; k < n; ++k) {
        OpElement pk = OpElement::power(ipow(p.value(), k), p);
        q = multiply(pk, q) - multiply(q, pk);
    }
    return q;
}

/* ---------------- admissible basis and the dual count ---------------- */

namespace {

/* Enumerate admissible words by building them right to left (in application order). */
void enumerate_admissible(int max_t, int exact_t, int p, std::vector<Word>& out)
{
    Word applied;  // application order: applied[0] is applied first
    std::function<void(int, int, int)> extend = [&](int last_i, int last_eps, int t) {
        if (exact_t < 0 || t == exact_t)
            out.emplace_back(applied.rbegin(), applied.rend());
        const int lower = last_i == 0 ? 1 : p * last_i + last_eps;
        for (int i = lower;; ++i) {
            const int ti = t + 2 * i * (p - 1);
            if (ti > max_t)
                break;
            applied.push_back(i);
            extend(i, 0, ti);
            if (ti + 1 <= max_t) {
                applied.push_back(kBeta);
                extend(i, 1, ti + 1);
                applied.pop_back();
            }
            applied.pop_back();
        }
    };
    extend(0, 0, 0);
    if (max_t >= 1) {
        applied.push_back(kBeta);
        extend(0, 1, 1);
        applied.pop_back();
    }
    std::sort(out.begin(), out.end(), WordOrder{p});
}

}  // namespace

std::vector<Word> admissible_basis(int max_t, Prime p)
{
    if (max_t < 0)
        throw InvalidInput("max_t must be nonnegative");
    std::vector<Word> out;
    enumerate_admissible(max_t, -1, p.value(), out);
    return out;
}

std::vector<Word> admissible_basis_in_degree(int t, Prime p)
{
    std::vector<Word> out;
    if (t < 0)
        return out;
    enumerate_admissible(t, t, p.value(), out);
    return out;
}

uint64_t milnor_monomial_count(Bidegree d, Prime p)
{
    if (d.t < 0 || d.w < 0)
        return 0;
    const int q = p.value();
    const int T = d.t, W = d.w;
    std::vector<uint64_t> table(std::size_t(T + 1) * (W + 1), 0);
    auto at = [&](int t, int w) -> uint64_t& { return table[std::size_t(t) * (W + 1) + w]; };
    at(0, 0) = 1;
    /* tau_i, exterior */
    for (int64_t pi = 1; 2 * pi - 1 <= T; pi *= q) {
        const int dt = int(2 * pi - 1), dw = int(pi - 1);
        for (int t = T; t >= dt; --t)
            for (int w = W; w >= dw; --w)
                at(t, w) += at(t - dt, w - dw);
    }
    /* zeta_j, polynomial */
    for (int64_t pj = q; 2 * pj - 2 <= T; pj *= q) {
        const int dt = int(2 * pj - 2), dw = int(pj - 1);
        for (int t = dt; t <= T; ++t)
            for (int w = dw; w <= W; ++w)
                at(t, w) += at(t - dt, w - dw);
    }
    return at(T, W);
}

}  // namespace steenrod
