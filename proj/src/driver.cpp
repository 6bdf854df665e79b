#include "lambda0/driver.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace lambda0 {

using nlohmann::json;

std::string RunConfig::fingerprint() const
{
    json j;
    j["f_min"] = f_min;
    j["f_max"] = f_max;
    j["level_max"] = level_max;
    j["exp_start"] = exp_start;
    j["primes"] = primes;
    j["window"] = window;
    j["bits"] = bits;
    j["verify_lower"] = verify_lower;
    j["orientation"] = orientation;
    return j.dump();
}

TruncatedLambdaIdeal FieldResult::rebuild_ideal() const
{
    LevelContext ctx{e, n_stab, variant};
    std::vector<TruncatedPolynomial> gens;
    for (const auto& g : j_generators) gens.push_back(poly_in_context(ctx, g));
    return TruncatedLambdaIdeal::from_generators(ctx, gens);
}

std::vector<uint64_t> enumerate_discriminants(uint64_t f_min, uint64_t f_max)
{
    std::vector<uint64_t> out;
    for (uint64_t f = std::max<uint64_t>(f_min, 5); f < f_max; ++f)
        if (is_fundamental_discriminant(f)) out.push_back(f);
    return out;
}

namespace {

Orientation pick_orientation(const RunConfig& cfg)
{
    if (cfg.orientation == "gamma") return Orientation::gamma;
    return Orientation::gamma_inverse;  // "gamma-inv" and "auto"
}

/* accumulate the level ideal, computing annihilator elements on demand and
 * stopping at the stability window */
struct LevelData {
    TruncatedLambdaIdeal ideal;
    SaturationReport sat;
};

LevelData accumulate_level(const FundamentalDiscriminant& fd, unsigned lvl, unsigned e,
                           const std::vector<AuxiliaryPrime>& primes, unsigned window,
                           Orientation orient)
{
    LevelContext ctx = level_context(fd, lvl, e);
    LevelData out{TruncatedLambdaIdeal(ctx), {}};
    for (const auto& P : primes) {
        auto before = out.ideal.basis();
        out.ideal.add_generator(eta_image(fd, lvl, P, e, orient));
        ++out.sat.primes_consumed;
        if (out.ideal.basis() == before)
            ++out.sat.stable_count;
        else
            out.sat.stable_count = 0;
        if (out.sat.stable_count >= window) {
            out.sat.saturated = true;
            break;
        }
    }
    return out;
}

} // namespace

FieldResult compute_field(const FundamentalDiscriminant& fd, const RunConfig& cfg)
{
    auto t0 = std::chrono::steady_clock::now();
    FieldResult res;
    res.f = fd.f;
    res.residue3 = fd.residue3;
    res.variant = fd.residue3 == 1 ? Variant::omega_prime : Variant::omega;
    res.orientation = pick_orientation(cfg);

    const unsigned n0 = fd.residue3 == 1 ? 1 : 0;
    unsigned e = cfg.exp_start ? cfg.exp_start : n0 + 3;

    std::map<unsigned, LevelData> lv;
    std::vector<AuxiliaryPrime> primes;
    unsigned window = cfg.window;

    // compute (and cache) the ideal at `lvl`; false when the coefficient
    // exponent leaves no headroom and must be escalated
    auto level_ok = [&](unsigned lvl) -> bool {
        if (e < lvl + 2) return false;
        auto it = lv.find(lvl);
        if (it == lv.end())
            it = lv.emplace(lvl, accumulate_level(fd, lvl, e, primes, window,
                                                  res.orientation)).first;
        return it->second.ideal.quotient_exponent_log3() < e;
    };

    std::optional<ClassGroupData> cg;
    if (fd.residue3 != 1) cg = class_group_3part(fd);

    std::optional<unsigned> n_stab;
    for (;;) {  // stability-window escalation
        for (;;) {  // exponent escalation
            lv.clear();
            primes = find_aux_primes(fd, e, 0, cfg.primes);
            bool escalate = false;
            for (unsigned n = n0; n + 1 <= cfg.level_max; ++n) {
                if (!level_ok(n) || !level_ok(n + 1)) {
                    escalate = true;
                    break;
                }
                if (stabilization_check(lv.at(n).ideal, lv.at(n + 1).ideal)) {
                    n_stab = n;
                    break;
                }
            }
            if (!escalate) break;
            e += 2;
            n_stab.reset();
        }
        // a too-small window can freeze a level before it saturates; the
        // class number exposes this at level 0, so widen and redo
        if (!cg || !n_stab || !level_ok(0) ||
            lv.at(0).ideal.log3_index() == cg->h3 || window >= 8 * cfg.window)
            break;
        window *= 2;
        n_stab.reset();
    }

    auto finish = [&](const char* status) {
        res.status = status;
        res.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return res;
    };

    if (!n_stab) {
        // report the deepest level computed
        if (!lv.empty()) {
            const auto& [dn, dd] = *lv.rbegin();
            res.e = e;
            res.n_stab = dn;
            res.tk = dd.ideal.tk_invariant();
            res.order_log3 = dd.ideal.log3_index();
            res.j_generators = dd.ideal.generators_symmetric();
        }
        return finish("unresolved: no stabilization within the level cap");
    }

    const unsigned ns = *n_stab;
    const TruncatedLambdaIdeal& J = lv.at(ns).ideal;
    res.e = e;
    res.n_stab = ns;
    res.tk = J.is_unit_ideal() ? 0 : J.tk_invariant();
    res.order_log3 = J.log3_index();
    res.j_generators = J.generators_symmetric();
    res.cert.primes_used = lv.at(ns + 1).sat.primes_consumed;
    res.cert.window_met = true;
    for (const auto& [l, d] : lv)
        if (!d.sat.saturated) res.cert.window_met = false;

    // ---- finiteness certification ----
    const unsigned b = res.order_log3;

    // rigorous lower bound without embeddings: #C_0 equals the 3-part of the
    // class number when 3 does not split the conductor; C_0 = 0 otherwise
    unsigned m_low = 0, a_low = 0;
    std::string lower_label = "trivial@0";
    if (cg) {
        a_low = cg->h3;
        lower_label = "class-number@0";
        if (level_ok(0) && lv.at(0).ideal.log3_index() != cg->h3)
            return finish("unresolved: class-number cross-check failed at level 0");
    }

    // a witness (m, N, a, b_N) proves finiteness when b_N - a < N - m; the
    // upper bound is rigorous at every level, so N may be extended beyond the
    // stabilization level (with a locally escalated coefficient exponent)
    // as long as the work stays within a sane budget
    std::map<unsigned, unsigned> deep_order;
    auto get_order = [&](unsigned N) -> std::optional<unsigned> {
        if (auto it = lv.find(N); it != lv.end()) return it->second.ideal.log3_index();
        if (auto it = deep_order.find(N); it != deep_order.end()) return it->second;
        if (pow3(N) > 300 || pow3(N + 1) * fd.fprime > 400'000'000ull) return std::nullopt;
        unsigned eN = std::max(e, N + 2);
        for (;;) {
            auto ps = eN == e ? primes : find_aux_primes(fd, eN, 0, cfg.primes);
            LevelData d =
                accumulate_level(fd, N, eN, ps, window, res.orientation);
            if (d.ideal.quotient_exponent_log3() < eN) {
                unsigned o = d.ideal.log3_index();
                deep_order[N] = o;
                return o;
            }
            eN += 2;
        }
    };
    auto try_witness = [&](unsigned m, unsigned a) -> bool {
        for (unsigned N = ns + 1; N <= cfg.level_max + 1; ++N) {
            auto bN = get_order(N);
            if (!bN) return false;
            if (*bN < a) continue;
            FinitenessWitness w{m, N, a, *bN};
            if (!finiteness_lemma(w)) continue;
            res.cert.lemma_applied = true;
            res.cert.witness = w;
            return true;
        }
        return false;
    };

    auto run_gras = [&]() {
        unsigned m = std::min<unsigned>(ns, 2);
        if (m < n0) m = n0;
        if (!level_ok(m)) return;
        GrasConfig gcfg;
        gcfg.bits_start = std::max(cfg.bits, 256u);
        gcfg.orient = res.orientation;
        VerifyReport vr = verify_ideal(fd, lv.at(m).ideal, gcfg);
        if (vr.verdict == VerifyVerdict::verified) {
            m_low = m;
            a_low = lv.at(m).ideal.log3_index();
            lower_label = "embeddings@" + std::to_string(m);
            res.cert.verify_level = static_cast<int>(m);
        } else if (vr.verdict == VerifyVerdict::refuted) {
            res.status = "unresolved: embedding verification refuted the accumulated ideal";
        }
    };

    if (cfg.verify_lower == "gras") run_gras();
    bool done = try_witness(m_low, a_low);
    if (!done && cfg.verify_lower == "auto" && res.cert.verify_level < 0) {
        run_gras();
        if (res.status.empty()) done = try_witness(m_low, a_low);
    }

    res.cert.lower = lower_label;
    res.cert.a = a_low;
    if (!res.status.empty()) return finish(res.status.c_str());
    if (!done) return finish("unresolved: no finiteness certificate");

    res.cert.certified = true;
    res.cert.exact = (a_low == b) || (res.cert.witness.b == res.cert.witness.a &&
                                      res.cert.witness.b == b);
    res.resolved = true;
    return finish("ok");
}

/* ---- journal ---- */

std::string result_to_json(const FieldResult& r)
{
    json j;
    j["f"] = r.f;
    j["residue3"] = r.residue3;
    j["variant"] = r.variant == Variant::omega ? "omega" : "omega_prime";
    j["status"] = r.status;
    j["gens"] = r.j_generators;
    j["e"] = r.e;
    j["n"] = r.n_stab;
    j["k"] = r.tk;
    j["order_log3"] = r.order_log3;
    j["orientation"] = r.orientation == Orientation::gamma ? "gamma" : "gamma-inv";
    j["cert"] = {{"primes", r.cert.primes_used},
                 {"window", r.cert.window_met},
                 {"lower", r.cert.lower},
                 {"verify_level", r.cert.verify_level},
                 {"a", r.cert.a},
                 {"lemma", r.cert.lemma_applied},
                 {"witness", {r.cert.witness.m, r.cert.witness.n, r.cert.witness.a,
                              r.cert.witness.b}},
                 {"exact", r.cert.exact},
                 {"certified", r.cert.certified}};
    j["seconds"] = r.seconds;
    return j.dump();
}

FieldResult result_from_json(const std::string& line)
{
    json j = json::parse(line);
    FieldResult r;
    r.f = j.at("f").get<uint64_t>();
    r.residue3 = j.at("residue3").get<unsigned>();
    r.variant = j.at("variant").get<std::string>() == "omega" ? Variant::omega
                                                              : Variant::omega_prime;
    r.status = j.at("status").get<std::string>();
    r.resolved = r.status == "ok";
    r.j_generators = j.at("gens").get<std::vector<std::vector<int64_t>>>();
    r.e = j.at("e").get<unsigned>();
    r.n_stab = j.at("n").get<unsigned>();
    r.tk = j.at("k").get<unsigned>();
    r.order_log3 = j.at("order_log3").get<unsigned>();
    r.orientation = j.at("orientation").get<std::string>() == "gamma"
                        ? Orientation::gamma
                        : Orientation::gamma_inverse;
    const json& c = j.at("cert");
    r.cert.primes_used = c.at("primes").get<unsigned>();
    r.cert.window_met = c.at("window").get<bool>();
    r.cert.lower = c.at("lower").get<std::string>();
    r.cert.verify_level = c.at("verify_level").get<int>();
    r.cert.a = c.at("a").get<unsigned>();
    r.cert.lemma_applied = c.at("lemma").get<bool>();
    auto w = c.at("witness").get<std::vector<unsigned>>();
    r.cert.witness = {w[0], w[1], w[2], w[3]};
    r.cert.exact = c.at("exact").get<bool>();
    r.cert.certified = c.at("certified").get<bool>();
    r.seconds = j.at("seconds").get<double>();
    return r;
}

void write_journal(std::ostream& os, const RunConfig& cfg, const std::vector<FieldResult>& rs)
{
    os << "#cfg " << cfg.fingerprint() << "\n";
    for (const auto& r : rs) os << result_to_json(r) << "\n";
}

std::vector<FieldResult> read_journal(std::istream& is, std::string* cfg_fingerprint)
{
    std::vector<FieldResult> out;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line.rfind("#cfg ", 0) == 0) {
            if (cfg_fingerprint) *cfg_fingerprint = line.substr(5);
            continue;
        }
        if (line[0] == '#') continue;
        out.push_back(result_from_json(line));
    }
    return out;
}

std::vector<FieldResult> scan_range(const RunConfig& cfg,
                                    const std::function<void(const FieldResult&)>& progress)
{
    std::vector<uint64_t> discs = enumerate_discriminants(cfg.f_min, cfg.f_max);

    std::map<uint64_t, FieldResult> done;
    if (cfg.resume && !cfg.out.empty()) {
        std::ifstream in(cfg.out);
        if (in) {
            std::string fp;
            for (auto& r : read_journal(in, &fp)) done.emplace(r.f, std::move(r));
            if (!fp.empty() && fp != cfg.fingerprint())
                throw std::runtime_error("scan_range: journal config mismatch, refusing resume");
        }
    }

    std::vector<std::optional<FieldResult>> slots(discs.size());
    std::atomic<size_t> next{0};
    std::mutex mu;
    size_t flushed = 0;

    std::ofstream jf;
    if (!cfg.out.empty()) {
        jf.open(cfg.out, std::ios::trunc);
        if (!jf) throw std::runtime_error("scan_range: cannot open " + cfg.out);
        jf << "#cfg " << cfg.fingerprint() << "\n";
    }

    auto flush_ready = [&]() {  // caller holds mu
        while (flushed < slots.size() && slots[flushed]) {
            if (jf.is_open()) jf << result_to_json(*slots[flushed]) << "\n" << std::flush;
            if (progress) progress(*slots[flushed]);
            ++flushed;
        }
    };

    unsigned jobs = cfg.jobs ? cfg.jobs : std::max(1u, std::thread::hardware_concurrency());
    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= discs.size()) break;
            FieldResult r;
            auto it = done.find(discs[i]);
            if (it != done.end()) {
                r = it->second;
            } else {
                try {
                    r = compute_field(validate_discriminant(discs[i]), cfg);
                } catch (const std::exception& ex) {
                    r.f = discs[i];
                    r.residue3 = static_cast<unsigned>(discs[i] % 3);
                    r.status = std::string("unresolved: exception: ") + ex.what();
                }
            }
            std::lock_guard<std::mutex> lk(mu);
            slots[i] = std::move(r);
            flush_ready();
        }
    };

    std::vector<std::thread> pool;
    for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    {
        std::lock_guard<std::mutex> lk(mu);
        flush_ready();
    }

    std::vector<FieldResult> out;
    out.reserve(slots.size());
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

/* ---- aggregation ---- */

std::map<unsigned, ClassTable> aggregate_tables(const std::vector<FieldResult>& rs)
{
    std::map<unsigned, ClassTable> tabs;
    for (const auto& r : rs) {
        ClassTable& t = tabs[r.residue3];
        ++t.total;
        if (!r.resolved) {
            ++t.unresolved;
            continue;
        }
        if (r.order_log3 == 0) {
            ++t.zero;
            continue;
        }
        ++t.nonzero;
        ++t.cells[{r.n_stab, r.tk}];
        if (r.order_log3 == 1 && r.tk == 1) ++t.maximal;
    }
    return tabs;
}

void print_tables(std::ostream& os, const std::map<unsigned, ClassTable>& tabs)
{
    for (const auto& [res3, t] : tabs) {
        os << "residue class f == " << res3 << " (mod 3): " << t.total << " fields, "
           << t.zero << " with C(f) = 0, " << t.nonzero << " nonzero, " << t.maximal
           << " with J = (3, T), " << t.unresolved << " unresolved\n";
        unsigned nmax = 0, kmax = 1;
        for (const auto& [cell, cnt] : t.cells) {
            nmax = std::max(nmax, cell.first);
            kmax = std::max(kmax, cell.second);
        }
        os << "n";
        for (unsigned k = 1; k <= kmax; ++k) os << ",T^" << k;
        os << ",total\n";
        unsigned n0 = res3 == 1 ? 1 : 0;
        for (unsigned n = n0; n <= nmax; ++n) {
            unsigned row = 0;
            os << n;
            for (unsigned k = 1; k <= kmax; ++k) {
                auto it = t.cells.find({n, k});
                unsigned c = it == t.cells.end() ? 0 : it->second;
                row += c;
                os << "," << c;
            }
            os << "," << row << "\n";
        }
        os << "total";
        unsigned grand = 0;
        for (unsigned k = 1; k <= kmax; ++k) {
            unsigned col = 0;
            for (const auto& [cell, cnt] : t.cells)
                if (cell.second == k) col += cnt;
            grand += col;
            os << "," << col;
        }
        os << "," << grand << "\n\n";
    }
}

/* ---- golden expectations ---- */

std::vector<int64_t> parse_poly(const std::string& s)
{
    std::vector<int64_t> coeff;
    auto at = [&](size_t deg) -> int64_t& {
        if (coeff.size() <= deg) coeff.resize(deg + 1, 0);
        return coeff[deg];
    };
    size_t i = 0;
    auto skip_ws = [&]() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    skip_ws();
    bool first = true;
    while (i < s.size()) {
        int sign = 1;
        skip_ws();
        if (s[i] == '+' || s[i] == '-') {
            if (s[i] == '-') sign = -1;
            ++i;
            skip_ws();
        } else if (!first) {
            throw std::invalid_argument("parse_poly: expected '+' or '-' in: " + s);
        }
        first = false;
        int64_t c = 1;
        bool have_c = false;
        if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            c = 0;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
                c = c * 10 + (s[i++] - '0');
            have_c = true;
        }
        size_t deg = 0;
        skip_ws();
        if (i < s.size() && (s[i] == 'T' || s[i] == 't')) {
            ++i;
            deg = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
                    throw std::invalid_argument("parse_poly: bad exponent in: " + s);
                deg = 0;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
                    deg = deg * 10 + static_cast<size_t>(s[i++] - '0');
            }
        } else if (!have_c) {
            throw std::invalid_argument("parse_poly: empty term in: " + s);
        }
        at(deg) += sign * c;
        skip_ws();
    }
    if (coeff.empty()) throw std::invalid_argument("parse_poly: empty polynomial");
    return coeff;
}

std::vector<GoldenEntry> parse_golden(std::istream& is)
{
    std::vector<GoldenEntry> out;
    std::string line;
    while (std::getline(is, line)) {
        auto h = line.find('#');
        if (h != std::string::npos) line.resize(h);
        bool blank = true;
        for (char ch : line)
            if (!std::isspace(static_cast<unsigned char>(ch))) blank = false;
        if (blank) continue;
        std::vector<std::string> parts;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ';')) parts.push_back(tok);
        if (parts.size() != 4)
            throw std::invalid_argument("golden file: expected 4 ';'-fields in: " + line);
        GoldenEntry ge;
        ge.f = std::stoull(parts[0]);
        std::stringstream gs(parts[1]);
        while (std::getline(gs, tok, ',')) ge.gens.push_back(parse_poly(tok));
        ge.n = static_cast<unsigned>(std::stoul(parts[2]));
        ge.k = static_cast<unsigned>(std::stoul(parts[3]));
        out.push_back(std::move(ge));
    }
    return out;
}

std::vector<GoldenVerdict> golden_check(const std::vector<FieldResult>& rs,
                                        const std::vector<GoldenEntry>& entries)
{
    std::map<uint64_t, const FieldResult*> by_f;
    for (const auto& r : rs) by_f[r.f] = &r;

    std::vector<GoldenVerdict> out;
    for (const auto& ge : entries) {
        GoldenVerdict v;
        v.f = ge.f;
        auto it = by_f.find(ge.f);
        if (it == by_f.end()) {
            v.note = "no result for this discriminant";
            out.push_back(v);
            continue;
        }
        const FieldResult& r = *it->second;
        v.found = true;
        v.n_match = r.n_stab == ge.n;
        v.k_match = r.tk == ge.k;
        try {
            TruncatedLambdaIdeal got = r.rebuild_ideal();
            LevelContext ctx = got.context();
            std::vector<TruncatedPolynomial> gens;
            for (const auto& g : ge.gens) gens.push_back(poly_in_context(ctx, g));
            TruncatedLambdaIdeal want = TruncatedLambdaIdeal::from_generators(ctx, gens);
            if (want == got) {
                v.ideal_match = true;
            } else if (want.involution() == got) {
                v.ideal_match = true;
                v.involuted = true;
            }
        } catch (const std::exception& ex) {
            v.note = std::string("comparison failed: ") + ex.what();
        }
        if (!r.resolved) v.note = r.status;
        out.push_back(v);
    }
    return out;
}

} // namespace lambda0
