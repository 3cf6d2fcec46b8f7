#include "rpg/witness.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>

#include "rpg/realize.hpp"

namespace rpg {

namespace {

CopyMap identity_map(const Presentation& p) {
    CopyMap cm;
    for (const auto& v : p.part.vertices) cm.vmap[v] = Location{{}, v};
    for (std::uint32_t k = 0; k < p.classes.size(); ++k) {
        ClassPlan plan;
        Tail t;
        t.from = 0;
        t.cls = k;
        t.offset = 0;
        t.stride = 1;
        t.body.push_back(identity_map(*p.classes[k].child));
        plan.tail = std::move(t);
        cm.plans.push_back(std::move(plan));
    }
    return cm;
}

} // namespace

EmbeddingWitness identity_witness(const Presentation& p) { return {identity_map(p)}; }

Location apply_witness(const EmbeddingWitness& w, const Location& src) {
    RelPath anchor;
    const CopyMap* cm = &w.root;
    for (auto [k, c] : src.path) {
        if (k >= cm->plans.size()) throw InputError("witness does not cover source class");
        const ClassPlan& pl = cm->plans[k];
        const CopyMap* next = nullptr;
        for (const auto& e : pl.exceptions) {
            if (e.copy == c) {
                anchor.insert(anchor.end(), e.anchor.begin(), e.anchor.end());
                next = &e.body[0];
                break;
            }
        }
        if (!next) {
            if (!pl.tail || c < pl.tail->from)
                throw InputError("witness does not cover source copy " + std::to_string(c));
            const Tail& t = *pl.tail;
            anchor.insert(anchor.end(), t.base.begin(), t.base.end());
            anchor.emplace_back(t.cls, t.offset + t.stride * (c - t.from));
            next = &t.body[0];
        }
        cm = next;
    }
    auto it = cm->vmap.find(src.name);
    if (it == cm->vmap.end()) throw InputError("witness does not cover vertex " + src.name);
    Location out;
    out.path = anchor;
    out.path.insert(out.path.end(), it->second.path.begin(), it->second.path.end());
    out.name = it->second.name;
    return out;
}

namespace {

struct OuterCtx {
    RelPath canchor; // relative to the output context anchor
    const CopyMap* cm;
};

OuterCtx outer_step(const OuterCtx& o, std::uint32_t k, std::uint64_t c) {
    if (k >= o.cm->plans.size()) throw InputError("compose: outer witness misses a class");
    const ClassPlan& pl = o.cm->plans[k];
    for (const auto& e : pl.exceptions) {
        if (e.copy == c) {
            OuterCtx n{o.canchor, &e.body[0]};
            n.canchor.insert(n.canchor.end(), e.anchor.begin(), e.anchor.end());
            return n;
        }
    }
    if (pl.tail && c >= pl.tail->from) {
        const Tail& t = *pl.tail;
        OuterCtx n{o.canchor, &t.body[0]};
        n.canchor.insert(n.canchor.end(), t.base.begin(), t.base.end());
        n.canchor.emplace_back(t.cls, t.offset + t.stride * (c - t.from));
        return n;
    }
    throw InputError("compose: outer witness does not cover copy " + std::to_string(c));
}

Location outer_eval(const OuterCtx& base, const Location& bloc) {
    OuterCtx cur = base;
    for (auto [k, c] : bloc.path) cur = outer_step(cur, k, c);
    auto it = cur.cm->vmap.find(bloc.name);
    if (it == cur.cm->vmap.end()) throw InputError("compose: outer misses vertex " + bloc.name);
    Location out;
    out.path = cur.canchor;
    out.path.insert(out.path.end(), it->second.path.begin(), it->second.path.end());
    out.name = it->second.name;
    return out;
}

CopyMap compose_cm(const CopyMap& inner, const OuterCtx& octx) {
    CopyMap out;
    for (const auto& [v, rel] : inner.vmap) out.vmap[v] = outer_eval(octx, rel);
    for (const auto& ipl : inner.plans) {
        ClassPlan opl;
        for (const auto& exc : ipl.exceptions) {
            OuterCtx ectx = octx;
            for (auto [k, c] : exc.anchor) ectx = outer_step(ectx, k, c);
            CopyException ne;
            ne.copy = exc.copy;
            ne.anchor = ectx.canchor;
            ne.body.push_back(compose_cm(exc.body[0], OuterCtx{{}, ectx.cm}));
            opl.exceptions.push_back(std::move(ne));
        }
        if (ipl.tail) {
            const Tail& t1 = *ipl.tail;
            OuterCtx tctx = octx;
            for (auto [k, c] : t1.base) tctx = outer_step(tctx, k, c);
            if (t1.cls >= tctx.cm->plans.size())
                throw InputError("compose: outer misses the tail class");
            const ClassPlan& pl2 = tctx.cm->plans[t1.cls];
            // pull outer exceptions hit by the inner tail back to source copies
            for (const auto& oexc : pl2.exceptions) {
                if (oexc.copy < t1.offset) continue;
                std::uint64_t d = oexc.copy - t1.offset;
                if (d % t1.stride) continue;
                CopyException ne;
                ne.copy = t1.from + d / t1.stride;
                ne.anchor = tctx.canchor;
                ne.anchor.insert(ne.anchor.end(), oexc.anchor.begin(), oexc.anchor.end());
                ne.body.push_back(compose_cm(t1.body[0], OuterCtx{{}, &oexc.body[0]}));
                opl.exceptions.push_back(std::move(ne));
            }
            if (pl2.tail) {
                const Tail& t2 = *pl2.tail;
                std::uint64_t fromp = t1.from;
                if (t1.offset < t2.from) {
                    std::uint64_t need = t2.from - t1.offset;
                    fromp = t1.from + (need + t1.stride - 1) / t1.stride;
                }
                std::uint64_t b_at = t1.offset + t1.stride * (fromp - t1.from);
                Tail nt;
                nt.from = fromp;
                nt.base = tctx.canchor;
                nt.base.insert(nt.base.end(), t2.base.begin(), t2.base.end());
                nt.cls = t2.cls;
                nt.offset = t2.offset + t2.stride * (b_at - t2.from);
                nt.stride = t2.stride * t1.stride;
                nt.body.push_back(compose_cm(t1.body[0], OuterCtx{{}, &t2.body[0]}));
                opl.tail = std::move(nt);
            }
        }
        std::sort(opl.exceptions.begin(), opl.exceptions.end(),
                  [](const CopyException& a, const CopyException& b) { return a.copy < b.copy; });
        out.plans.push_back(std::move(opl));
    }
    return out;
}

} // namespace

EmbeddingWitness compose(const EmbeddingWitness& outer, const EmbeddingWitness& inner) {
    return {compose_cm(inner.root, OuterCtx{{}, &outer.root})};
}

namespace {

struct InstWalker {
    std::uint64_t n = 0;
    std::uint64_t max_needed = 0;
    std::map<Location, Location> vmap;
    std::string err;

    bool run(const Presentation& src, const CopyMap& cm, const RelPath& anchor,
             std::vector<std::pair<std::uint32_t, std::uint64_t>>& spath) {
        for (const auto& v : src.part.vertices) {
            auto it = cm.vmap.find(v);
            if (it == cm.vmap.end()) {
                err = "vertex " + v + " not covered";
                return false;
            }
            Location dst;
            dst.path = anchor;
            dst.path.insert(dst.path.end(), it->second.path.begin(), it->second.path.end());
            dst.name = it->second.name;
            for (auto [k, c] : dst.path) max_needed = std::max(max_needed, c);
            vmap[Location{spath, v}] = std::move(dst);
        }
        if (cm.plans.size() < src.classes.size()) {
            err = "class plans missing";
            return false;
        }
        for (std::uint32_t k = 0; k < src.classes.size(); ++k) {
            const auto& cls = src.classes[k];
            std::uint64_t copies = cls.mult.is_omega() ? n : cls.mult.count();
            const ClassPlan& pl = cm.plans[k];
            if (pl.tail && pl.tail->from > copies) {
                err = "n too small for the exceptional copies";
                return false;
            }
            for (std::uint64_t c = 0; c < copies; ++c) {
                const CopyMap* body = nullptr;
                RelPath sub = anchor;
                for (const auto& e : pl.exceptions) {
                    if (e.copy == c) {
                        sub.insert(sub.end(), e.anchor.begin(), e.anchor.end());
                        body = &e.body[0];
                        break;
                    }
                }
                if (!body) {
                    if (!pl.tail || c < pl.tail->from) {
                        err = "copy " + std::to_string(c) + " of class " + std::to_string(k) +
                              " not covered";
                        return false;
                    }
                    const Tail& t = *pl.tail;
                    sub.insert(sub.end(), t.base.begin(), t.base.end());
                    sub.emplace_back(t.cls, t.offset + t.stride * (c - t.from));
                    body = &t.body[0];
                }
                spath.emplace_back(k, c);
                bool ok = run(*cls.child, *body, sub, spath);
                spath.pop_back();
                if (!ok) return false;
            }
        }
        return true;
    }
};

} // namespace

Instantiated instantiate_witness(const EmbeddingWitness& w, const GraphTuple& g_norm,
                                 const GraphTuple& h_norm, std::uint64_t n, Mode mode) {
    Instantiated out;
    InstWalker walker;
    walker.n = n;
    RelPath anchor;
    std::vector<std::pair<std::uint32_t, std::uint64_t>> spath;
    if (!walker.run(*g_norm.pres, w.root, anchor, spath)) {
        out.reason = walker.err;
        return out;
    }
    out.n_src = n;
    out.n_dst = std::max(n, walker.max_needed + 1);
    out.src = truncate(*g_norm.pres, out.n_src);
    out.dst = truncate(*h_norm.pres, out.n_dst);
    out.vmap = std::move(walker.vmap);

    if (out.vmap.size() != out.src.size()) {
        out.reason = "instantiated map does not cover the source truncation";
        return out;
    }
    std::set<Location> images;
    for (const auto& [s, d] : out.vmap) {
        if (out.src.index_of(s) < 0) {
            out.reason = "stray source vertex " + s.str();
            return out;
        }
        if (out.dst.index_of(d) < 0) {
            out.reason = "image outside the target truncation: " + d.str();
            return out;
        }
        if (!images.insert(d).second) {
            out.reason = "collision at " + d.str();
            return out;
        }
    }
    auto dst_edge = [&](const Location& a, const Location& b) {
        auto i = static_cast<std::uint32_t>(out.dst.index_of(a));
        auto j = static_cast<std::uint32_t>(out.dst.index_of(b));
        return std::binary_search(out.dst.edges.begin(), out.dst.edges.end(),
                                  std::make_pair(std::min(i, j), std::max(i, j)));
    };
    for (std::size_t i = 0; i < out.src.size(); ++i) {
        for (std::size_t j = i + 1; j < out.src.size(); ++j) {
            bool ge = std::binary_search(
                out.src.edges.begin(), out.src.edges.end(),
                std::make_pair(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)));
            bool he = dst_edge(out.vmap.at(out.src.vertices[i]), out.vmap.at(out.src.vertices[j]));
            if (ge && !he) {
                out.reason = "edge dropped: " + out.src.vertices[i].str() + " -- " +
                             out.src.vertices[j].str();
                return out;
            }
            if (mode == Mode::STRONG && !ge && he) {
                out.reason = "non-edge violated: " + out.src.vertices[i].str() + " -- " +
                             out.src.vertices[j].str();
                return out;
            }
        }
    }
    out.ok = true;
    return out;
}

namespace {

struct Verifier {
    const Presentation* tgt;
    Mode mode;
    std::string err;
    std::uint64_t max_tail_from = 0;

    bool fail(const std::string& m) {
        if (err.empty()) err = m;
        return false;
    }

    // env: source outer name -> representative absolute target location
    bool walk(const Presentation& src, const CopyMap& cm, const RelPath& anchor,
              std::map<std::string, Location>& env) {
        std::map<std::string, Location> imgs;
        for (const auto& v : src.part.vertices) {
            auto it = cm.vmap.find(v);
            if (it == cm.vmap.end()) return fail("vertex " + v + " unmapped");
            Location abs;
            abs.path = anchor;
            abs.path.insert(abs.path.end(), it->second.path.begin(), it->second.path.end());
            abs.name = it->second.name;
            if (!location_valid(*tgt, abs)) return fail("invalid image " + abs.str());
            for (const auto& [u, other] : imgs)
                if (other == abs) return fail("two vertices share image " + abs.str());
            imgs[v] = abs;
        }
        // level-internal pairs
        for (auto iu = imgs.begin(); iu != imgs.end(); ++iu) {
            for (auto iv = std::next(iu); iv != imgs.end(); ++iv) {
                auto key = std::make_pair(std::min(iu->first, iv->first),
                                          std::max(iu->first, iv->first));
                bool ge = std::binary_search(src.part.internal_edges.begin(),
                                             src.part.internal_edges.end(), key);
                bool he = locations_adjacent(*tgt, iu->second, iv->second);
                if (ge && !he)
                    return fail("edge " + key.first + "~" + key.second + " not preserved");
                if (mode == Mode::STRONG && !ge && he)
                    return fail("non-edge " + key.first + "~" + key.second + " violated");
            }
        }
        // pairs against the enclosing scope
        for (const auto& [v, img] : imgs) {
            for (const auto& [x, ximg] : env) {
                bool ge = std::binary_search(src.part.boundary_edges.begin(),
                                             src.part.boundary_edges.end(), std::make_pair(v, x));
                bool he = locations_adjacent(*tgt, img, ximg);
                if (ge && !he) return fail("boundary edge " + v + "~" + x + " not preserved");
                if (mode == Mode::STRONG && !ge && he)
                    return fail("boundary non-edge " + v + "~" + x + " violated");
            }
        }

        if (cm.plans.size() < src.classes.size()) return fail("class plans missing");
        for (const auto& [v, img] : imgs) env[v] = img;
        bool ok = true;
        for (std::uint32_t k = 0; k < src.classes.size() && ok; ++k) {
            const auto& cls = src.classes[k];
            const ClassPlan& pl = cm.plans[k];
            std::set<std::uint64_t> seen;
            for (const auto& e : pl.exceptions) {
                if (!seen.insert(e.copy).second) {
                    ok = fail("duplicate exception copy");
                    break;
                }
                if (!cls.mult.is_omega() && e.copy >= cls.mult.count()) {
                    ok = fail("exception beyond source multiplicity");
                    break;
                }
                RelPath sub = anchor;
                sub.insert(sub.end(), e.anchor.begin(), e.anchor.end());
                ok = ok && walk(*cls.child, e.body[0], sub, env);
            }
            if (!ok) break;
            if (pl.tail) {
                const Tail& t = *pl.tail;
                max_tail_from = std::max(max_tail_from, t.from);
                if (t.stride == 0) {
                    ok = fail("zero tail stride");
                    break;
                }
                // capacity of the target class
                RelPath base_abs = anchor;
                base_abs.insert(base_abs.end(), t.base.begin(), t.base.end());
                const Presentation* lvl = tgt;
                bool path_ok = true;
                for (auto [ck, cc] : base_abs) {
                    if (ck >= lvl->classes.size() ||
                        (!lvl->classes[ck].mult.is_omega() &&
                         cc >= lvl->classes[ck].mult.count())) {
                        path_ok = false;
                        break;
                    }
                    lvl = lvl->classes[ck].child.get();
                }
                if (!path_ok || t.cls >= lvl->classes.size()) {
                    ok = fail("tail anchor invalid");
                    break;
                }
                const auto& tcls = lvl->classes[t.cls];
                if (cls.mult.is_omega()) {
                    if (!tcls.mult.is_omega()) {
                        ok = fail("omega tail into a finite class");
                        break;
                    }
                } else if (!tcls.mult.is_omega() && cls.mult.count() > t.from) {
                    std::uint64_t last = t.offset + t.stride * (cls.mult.count() - 1 - t.from);
                    if (last >= tcls.mult.count()) {
                        ok = fail("tail exceeds target multiplicity");
                        break;
                    }
                }
                // representative copy
                if (cls.mult.is_omega() || cls.mult.count() > t.from) {
                    RelPath sub = base_abs;
                    sub.emplace_back(t.cls, t.offset);
                    ok = ok && walk(*cls.child, t.body[0], sub, env);
                }
            } else {
                // every source copy needs an exception
                std::uint64_t covered = pl.exceptions.size();
                if (cls.mult.is_omega() || cls.mult.count() > covered) {
                    ok = fail("source copies not covered by the plan");
                    break;
                }
            }
        }
        for (const auto& [v, img] : imgs) env.erase(v);
        return ok;
    }
};

} // namespace

VerifyResult verify_witness(const EmbeddingWitness& w, const GraphTuple& g_norm,
                            const GraphTuple& h_norm, Mode mode) {
    // X must land in Y as top-level vertices
    for (const auto& x : g_norm.x) {
        auto it = w.root.vmap.find(x);
        if (it == w.root.vmap.end()) return {false, "x vertex unmapped"};
        if (!it->second.path.empty() ||
            !std::binary_search(h_norm.x.begin(), h_norm.x.end(), it->second.name))
            return {false, "phi(X) not inside Y"};
    }

    Verifier ver{h_norm.pres.get(), mode, {}, 0};
    std::map<std::string, Location> env;
    RelPath anchor;
    if (!ver.walk(*g_norm.pres, w.root, anchor, env)) return {false, "symbolic: " + ver.err};

    std::uint64_t lo = std::max<std::uint64_t>(3, ver.max_tail_from + 1);
    std::uint64_t hi = std::max<std::uint64_t>(5, ver.max_tail_from + 2);
    for (std::uint64_t n : {lo, hi}) {
        Instantiated inst = instantiate_witness(w, g_norm, h_norm, n, mode);
        if (!inst.ok)
            return {false, "instantiation at n=" + std::to_string(n) + ": " + inst.reason};
        if (n == hi) break;
    }
    return {true, ""};
}

} // namespace rpg
