#include "gen.hpp"

#include <algorithm>

namespace lamhat::testing {

namespace {

const std::vector<std::pair<std::string, size_t>> tags{{"Nil", 0}, {"One", 1}, {"Pair", 2}, {"Triple", 3}};
const std::vector<std::string> names{"x", "y", "z", "w"};

struct Gen {
    std::mt19937_64& rng;
    GenConfig cfg;

    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }
    bool coin(double p) { return std::bernoulli_distribution(p)(rng); }
    template <class T> const T& any(const std::vector<T>& v) { return v[pick(static_cast<int>(v.size()))]; }

    std::vector<std::string> pool() {
        auto v = names;
        std::shuffle(v.begin(), v.end(), rng);
        return v;
    }

    PatternPtr pattern(int depth, std::vector<std::string>& avail) {
        if (avail.empty()) return pdata("Nil");
        if (depth <= 0 || coin(0.55)) {
            auto x = avail.back();
            avail.pop_back();
            return pvar(x);
        }
        return data_pattern(any(tags).first, depth, avail);
    }

    PatternPtr data_pattern(const std::string& tag, int depth, std::vector<std::string>& avail) {
        std::vector<PatternPtr> args;
        for (size_t i = 0; i < arity(tag); ++i) args.push_back(pattern(depth - 1, avail));
        return pdata(tag, std::move(args));
    }

    static size_t arity(const std::string& tag) {
        for (auto& [t, n] : tags)
            if (t == tag) return n;
        return 0;
    }

    static Names with(Names scope, const PatternPtr& p) { return set_union(scope, p->vars); }

    TermPtr leaf(const Names& scope) {
        if (!scope.empty() && coin(0.7)) return var(scope[pick(static_cast<int>(scope.size()))]);
        if (!cfg.closed && coin(0.5)) return var(any(names));
        return coin(0.5) ? data("Nil") : identity();
    }

    TermPtr data_of(const std::string& tag, int d, const Names& scope) {
        std::vector<TermPtr> args;
        for (size_t i = 0; i < arity(tag); ++i) args.push_back(term(d - 1, scope));
        return data(tag, std::move(args));
    }

    TermPtr abs_term(int d, const Names& scope) {
        auto avail = pool();
        auto p = pattern(2, avail);
        return abs(p, term(d - 1, with(scope, p)));
    }

    std::vector<Branch> branches(int d, const Names& scope, std::vector<std::string> must, int n) {
        std::vector<std::string> ts;
        for (auto& [t, a] : tags) ts.push_back(t);
        std::shuffle(ts.begin(), ts.end(), rng);
        for (auto& t : ts)
            if (static_cast<int>(must.size()) < n && std::find(must.begin(), must.end(), t) == must.end()) must.push_back(t);
        std::shuffle(must.begin(), must.end(), rng);
        std::vector<Branch> bs;
        for (auto& t : must) {
            auto avail = pool();
            auto p = data_pattern(t, 2, avail);
            bs.push_back({p, term(d - 1, with(scope, p))});
        }
        return bs;
    }

    TermPtr redex(int d, const Names& scope) {
        switch (pick(3)) {
        case 0: {
            TermPtr f = abs_term(d - 1, scope);
            if (coin(0.3)) {
                auto avail = pool();
                auto p = pattern(1, avail);
                f = match(f, p, term(d - 2, scope));
            }
            return app(f, term(d - 1, scope));
        }
        case 1: {
            auto tag = any(tags).first;
            auto avail = pool();
            auto p = data_pattern(tag, 2, avail);
            auto arg_tag = coin(0.85) ? tag : any(tags).first;
            return match(term(d - 1, with(scope, p)), p, data_of(arg_tag, d - 1, scope));
        }
        default: {
            auto tag = any(tags).first;
            std::vector<std::string> must;
            if (coin(0.85)) must.push_back(tag);
            return case_of(data_of(tag, d - 1, scope), branches(d, scope, must, 1 + pick(3)));
        }
        }
    }

    TermPtr term(int d, const Names& scope) {
        if (d <= 1) return leaf(scope);
        int w[] = {1, 2, 2, 2, 2, 2, cfg.redex_weight};
        int total = 0;
        for (int x : w) total += x;
        int r = pick(total), k = 0;
        while (r >= w[k]) r -= w[k++];
        switch (k) {
        case 0: return leaf(scope);
        case 1: return abs_term(d, scope);
        case 2: return app(term(d - 1, scope), term(d - 1, scope));
        case 3: {
            auto avail = pool();
            auto p = pattern(2, avail);
            return match(term(d - 1, with(scope, p)), p, term(d - 1, scope));
        }
        case 4: return data_of(any(tags).first, d, scope);
        case 5: return case_of(term(d - 1, scope), branches(d, scope, {}, 1 + pick(3)));
        default: return redex(d, scope);
        }
    }

    // list context frames around a core
    TermPtr frames(TermPtr core, int d, const Names& scope) {
        int n = pick(3);
        for (int i = 0; i < n; ++i) {
            auto avail = pool();
            auto p = pattern(1, avail);
            core = match(core, p, term(d, scope));
        }
        return core;
    }

    TermPtr base_clash(int d, const Names& scope) {
        auto tag = any(tags).first;
        switch (pick(5)) {
        case 0: return app(frames(data_of(tag, d, scope), d, scope), term(d, scope));
        case 1: {
            auto avail = pool();
            auto p = data_pattern(tag, 1, avail);
            return match(term(d, with(scope, p)), p, frames(abs_term(d, scope), d, scope));
        }
        case 2: {
            std::string other;
            do other = any(tags).first;
            while (other == tag);
            auto avail = pool();
            auto p = data_pattern(tag, 1, avail);
            return match(term(d, with(scope, p)), p, frames(data_of(other, d, scope), d, scope));
        }
        case 3: return case_of(frames(abs_term(d, scope), d, scope), branches(d, scope, {}, 1 + pick(3)));
        default: {
            auto bs = branches(d, scope, {}, 1 + pick(3));
            bs.erase(std::remove_if(bs.begin(), bs.end(), [&](const Branch& b) { return b.pattern->name == tag; }),
                     bs.end());
            if (bs.empty()) {
                std::string other;
                do other = any(tags).first;
                while (other == tag);
                bs = branches(d, scope, {other}, 1);
            }
            return case_of(frames(data_of(tag, d, scope), d, scope), std::move(bs));
        }
        }
    }

    TermPtr clash(int depth, const Names& scope) {
        if (depth <= 0 || coin(0.3)) return base_clash(2, scope);
        switch (pick(4)) {
        case 0: return app(clash(depth - 1, scope), term(2, scope));
        case 1: {
            auto avail = pool();
            auto p = pattern(1, avail);
            return match(clash(depth - 1, with(scope, p)), p, term(2, scope));
        }
        case 2: {
            auto avail = pool();
            auto p = pattern(1, avail);
            return match(term(2, with(scope, p)), p, clash(depth - 1, scope));
        }
        default: return case_of(clash(depth - 1, scope), branches(2, scope, {}, 1 + pick(2)));
        }
    }
};

struct SrcGen {
    std::mt19937_64& rng;
    Calculus k;

    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }
    bool coin(double p) { return std::bernoulli_distribution(p)(rng); }
    std::string name() { return names[pick(static_cast<int>(names.size()))]; }

    SrcPtr leaf(const std::vector<std::string>& scope) {
        if (!scope.empty() && coin(0.75)) return svar(scope[pick(static_cast<int>(scope.size()))]);
        return svar(name());
    }

    SrcPtr value(int d, std::vector<std::string> scope) {
        if (d <= 1 || coin(0.3)) return leaf(scope);
        auto x = name();
        scope.push_back(x);
        return sabs(x, term(d - 1, scope));
    }

    SrcPtr term(int d, std::vector<std::string> scope) {
        if (d <= 1) return leaf(scope);
        int n = k == Calculus::Bang ? 6 : 4;
        switch (pick(n)) {
        case 0: return leaf(scope);
        case 1: {
            auto x = name();
            auto s2 = scope;
            s2.push_back(x);
            return sabs(x, term(d - 1, s2));
        }
        case 2: return sapp(term(d - 1, scope), term(d - 1, scope));
        case 3: {
            auto x = name();
            auto s2 = scope;
            s2.push_back(x);
            auto f = sabs(x, term(d - 1, s2));
            if (k == Calculus::Cbv) return sapp(f, value(d - 1, scope));
            if (k == Calculus::Bang) return sapp(f, coin(0.6) ? sbang(term(d - 1, scope)) : term(d - 1, scope));
            return sapp(f, term(d - 1, scope));
        }
        case 4: return sbang(term(d - 1, scope));
        default: {
            auto x = name();
            auto s2 = scope;
            s2.push_back(x);
            auto arg = coin(0.6) ? sbang(term(d - 2, scope)) : term(d - 1, scope);
            return ssub(term(d - 1, s2), x, arg);
        }
        }
    }
};

} // namespace

const TagRegistry& registry() {
    static const TagRegistry reg = [] {
        TagRegistry r;
        for (auto& [t, n] : tags) r.declare(t, n);
        return r;
    }();
    return reg;
}

TermPtr random_term(std::mt19937_64& rng, const GenConfig& cfg) {
    Gen g{rng, cfg};
    return g.term(cfg.max_depth, {});
}

SrcPtr random_source(std::mt19937_64& rng, Calculus k, int max_depth) {
    SrcGen g{rng, k};
    return g.term(max_depth, {});
}

TermPtr random_base_clash(std::mt19937_64& rng, int depth) {
    GenConfig cfg;
    cfg.closed = true;
    Gen g{rng, cfg};
    return g.base_clash(depth, {});
}

TermPtr random_clash(std::mt19937_64& rng, int depth, bool closed) {
    GenConfig cfg;
    cfg.closed = closed;
    Gen g{rng, cfg};
    return g.clash(depth, {});
}

} // namespace lamhat::testing
