#include "finalg/io.hpp"

#include <fstream>
#include <map>

namespace finalg {

namespace {

Json table_json(const std::vector<Elem>& t) { return Json(t); }

Table1 table_from(const Json& j, const char* what) {
    if (!j.is_array()) throw StructuralError(cat(what, ": expected an array"));
    Table1 out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number_integer()) throw StructuralError(cat(what, ": expected integers"));
        out.push_back(v.get<Elem>());
    }
    return out;
}

int int_field(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer())
        throw StructuralError(cat("missing integer field '", key, "'"));
    return j[key].get<int>();
}

const Json& field(const Json& j, const char* key) {
    if (!j.contains(key)) throw StructuralError(cat("missing field '", key, "'"));
    return j[key];
}

}  // namespace

Json to_json(const FiniteAbelianGroup& g) {
    Json j;
    j["kind"] = "group";
    j["order"] = g.order;
    j["add"] = table_json(g.add);
    return j;
}

Json to_json(const FiniteHeap& h) {
    Json j;
    j["kind"] = "heap";
    j["order"] = h.order;
    j["ternary"] = table_json(h.ternary);
    return j;
}

Json to_json(const FiniteRing& r) {
    Json j;
    j["kind"] = "ring";
    j["order"] = r.order();
    j["add"] = table_json(r.add.add);
    j["mul"] = table_json(r.mul);
    return j;
}

Json to_json(const FiniteTruss& t) {
    Json j;
    j["kind"] = "truss";
    j["order"] = t.order();
    j["ternary"] = table_json(t.heap.ternary);
    j["mul"] = table_json(t.mul);
    return j;
}

Json to_json(const FiniteTModule& m) {
    Json j;
    j["kind"] = "module";
    j["truss"] = to_json(m.truss);
    j["order"] = m.heap.order;
    j["ternary"] = table_json(m.heap.ternary);
    j["action"] = table_json(m.action);
    return j;
}

Json to_json(const FiniteTGroup& g) {
    Json j;
    j["kind"] = "tgroup";
    j["truss"] = to_json(g.truss);
    j["order"] = g.group.order;
    j["add"] = table_json(g.group.add);
    j["action"] = table_json(g.action);
    return j;
}

Json to_json(const FiniteHeapOfModules& hm) {
    Json j;
    j["kind"] = "hmodule";
    j["truss"] = to_json(hm.truss);
    j["order"] = hm.morder();
    j["ternary"] = table_json(hm.heap.ternary);
    j["lambda"] = table_json(hm.lambda);
    return j;
}

Json to_json(const FiniteTAffineSpace& a) {
    Json j;
    j["kind"] = "affine";
    j["carrier"] = a.carrier;
    j["tgroup"] = to_json(a.group);
    j["rho"] = table_json(a.rho);
    return j;
}

Json to_json(const BinaryStructure& b) {
    Json j;
    j["kind"] = "spindle";
    j["order"] = b.order;
    j["op"] = table_json(b.op);
    Json flags;
    flags["shelf"] = b.flags.shelf;
    flags["spindle"] = b.flags.spindle;
    flags["rack"] = b.flags.rack;
    flags["quandle"] = b.flags.quandle;
    flags["entropic"] = b.flags.entropic;
    j["flags"] = flags;
    if (b.division) j["division"] = table_json(*b.division);
    return j;
}

Json to_json(const YbePairMap& r) {
    Json j;
    j["kind"] = "ybe";
    j["order"] = r.order;
    j["r1"] = table_json(r.r1);
    j["r2"] = table_json(r.r2);
    j["nondegenerate"] = r.nondegenerate;
    if (r.inverse) {
        j["inv1"] = table_json(r.inverse->first);
        j["inv2"] = table_json(r.inverse->second);
    }
    return j;
}

Json to_json(const ShortExactSequence& s) {
    Json j;
    j["kind"] = "sequence";
    j["n"] = s.modulus;
    j["P"] = to_json(s.p);
    j["Q"] = to_json(s.q);
    j["R"] = to_json(s.r);
    j["iota"] = table_json(s.iota);
    j["pi"] = table_json(s.pi);
    return j;
}

namespace {

FiniteAbelianGroup group_from_json(const Json& j) {
    return group_from_add_table(int_field(j, "order"), table_from(field(j, "add"), "add"));
}

FiniteHeap heap_from_json(const Json& j) {
    FiniteHeap h;
    h.order = int_field(j, "order");
    h.ternary = table_from(field(j, "ternary"), "ternary");
    if (h.order < 0 || h.ternary.size() != size_t(h.order) * h.order * h.order)
        throw StructuralError("heap: table length does not match order");
    for (Elem v : h.ternary)
        if (!in_range(v, h.order)) throw StructuralError("heap: entry out of range");
    return h;
}

FiniteTruss truss_from_json(const Json& j);

FiniteTruss truss_field(const Json& j, const std::filesystem::path& base) {
    const Json& tf = field(j, "truss");
    if (tf.is_string()) {
        std::filesystem::path p = base / tf.get<std::string>();
        StructureFile sf = load_structure_file(p);
        if (sf.kind != "truss")
            throw StructuralError(cat("referenced file ", p.string(), " is not a truss"));
        return std::get<FiniteTruss>(sf.value);
    }
    return truss_from_json(tf);
}

FiniteTruss truss_from_json(const Json& j) {
    FiniteTruss t;
    t.heap = heap_from_json(j);
    t.mul = table_from(field(j, "mul"), "mul");
    if (t.mul.size() != size_t(t.order()) * t.order())
        throw StructuralError("truss: mul length does not match order");
    for (Elem v : t.mul)
        if (!in_range(v, t.order())) throw StructuralError("truss: mul entry out of range");
    // cache unit and absorber; axiom failures surface in verify
    (void)validate_truss(t);
    return t;
}

}  // namespace

StructureFile parse_structure(const Json& j, const std::filesystem::path& base) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw StructuralError("structure file: missing kind");
    StructureFile sf;
    sf.kind = j["kind"].get<std::string>();

    if (sf.kind == "group") {
        sf.value = group_from_json(j);
    } else if (sf.kind == "heap") {
        sf.value = heap_from_json(j);
    } else if (sf.kind == "ring") {
        FiniteRing r;
        r.add = group_from_json(j);
        r.mul = table_from(field(j, "mul"), "mul");
        if (r.mul.size() != size_t(r.order()) * r.order())
            throw StructuralError("ring: mul length does not match order");
        for (Elem v : r.mul)
            if (!in_range(v, r.order())) throw StructuralError("ring: mul entry out of range");
        sf.value = std::move(r);
    } else if (sf.kind == "truss") {
        sf.value = truss_from_json(j);
    } else if (sf.kind == "module") {
        FiniteTModule m;
        m.truss = truss_field(j, base);
        m.heap = heap_from_json(j);
        m.action = table_from(field(j, "action"), "action");
        if (m.action.size() != size_t(m.truss.order()) * m.heap.order)
            throw StructuralError("module: action length mismatch");
        for (Elem v : m.action)
            if (!in_range(v, m.heap.order))
                throw StructuralError("module: action entry out of range");
        sf.value = std::move(m);
    } else if (sf.kind == "tgroup") {
        FiniteTGroup g;
        g.truss = truss_field(j, base);
        g.group = group_from_json(j);
        g.action = table_from(field(j, "action"), "action");
        if (g.action.size() != size_t(g.truss.order()) * g.group.order)
            throw StructuralError("tgroup: action length mismatch");
        for (Elem v : g.action)
            if (!in_range(v, g.group.order))
                throw StructuralError("tgroup: action entry out of range");
        sf.value = std::move(g);
    } else if (sf.kind == "hmodule") {
        FiniteHeapOfModules hm;
        hm.truss = truss_field(j, base);
        hm.heap = heap_from_json(j);
        hm.lambda = table_from(field(j, "lambda"), "lambda");
        if (hm.lambda.size() != size_t(hm.torder()) * hm.morder() * hm.morder())
            throw StructuralError("hmodule: lambda length mismatch");
        for (Elem v : hm.lambda)
            if (!in_range(v, hm.morder()))
                throw StructuralError("hmodule: lambda entry out of range");
        sf.value = std::move(hm);
    } else if (sf.kind == "affine") {
        FiniteTAffineSpace a;
        a.carrier = int_field(j, "carrier");
        const Json& gj = field(j, "tgroup");
        FiniteTGroup g;
        g.truss = truss_field(gj, base);
        g.group = group_from_json(gj);
        g.action = table_from(field(gj, "action"), "action");
        if (g.action.size() != size_t(g.truss.order()) * g.group.order)
            throw StructuralError("affine: tgroup action length mismatch");
        a.group = std::move(g);
        a.rho = table_from(field(j, "rho"), "rho");
        if (a.carrier < 0 || a.rho.size() != size_t(a.group.group.order) * a.carrier)
            throw StructuralError("affine: rho length mismatch");
        for (Elem v : a.rho)
            if (!in_range(v, a.carrier)) throw StructuralError("affine: rho entry out of range");
        sf.value = std::move(a);
    } else if (sf.kind == "spindle") {
        BinaryStructure b;
        b.order = int_field(j, "order");
        b.op = table_from(field(j, "op"), "op");
        if (b.op.size() != size_t(b.order) * b.order)
            throw StructuralError("spindle: op length mismatch");
        for (Elem v : b.op)
            if (!in_range(v, b.order)) throw StructuralError("spindle: op entry out of range");
        const Json& fl = field(j, "flags");
        b.flags.shelf = fl.value("shelf", false);
        b.flags.spindle = fl.value("spindle", false);
        b.flags.rack = fl.value("rack", false);
        b.flags.quandle = fl.value("quandle", false);
        b.flags.entropic = fl.value("entropic", false);
        if (j.contains("division")) b.division = table_from(j["division"], "division");
        sf.value = std::move(b);
    } else if (sf.kind == "ybe") {
        YbePairMap r;
        r.order = int_field(j, "order");
        r.r1 = table_from(field(j, "r1"), "r1");
        r.r2 = table_from(field(j, "r2"), "r2");
        if (r.r1.size() != size_t(r.order) * r.order || r.r2.size() != r.r1.size())
            throw StructuralError("ybe: table length mismatch");
        for (Elem v : r.r1)
            if (!in_range(v, r.order)) throw StructuralError("ybe: r1 entry out of range");
        for (Elem v : r.r2)
            if (!in_range(v, r.order)) throw StructuralError("ybe: r2 entry out of range");
        if (!j.contains("nondegenerate") || !j["nondegenerate"].is_boolean())
            throw StructuralError("ybe: missing boolean nondegenerate");
        r.nondegenerate = j["nondegenerate"].get<bool>();
        if (j.contains("inv1") != j.contains("inv2"))
            throw StructuralError("ybe: inverse tables must come in pairs");
        if (j.contains("inv1"))
            r.inverse = {{table_from(j["inv1"], "inv1"), table_from(j["inv2"], "inv2")}};
        sf.value = std::move(r);
    } else if (sf.kind == "sequence") {
        ShortExactSequence s;
        s.modulus = int_field(j, "n");
        s.p = group_from_json(field(j, "P"));
        s.q = group_from_json(field(j, "Q"));
        s.r = group_from_json(field(j, "R"));
        s.iota = table_from(field(j, "iota"), "iota");
        s.pi = table_from(field(j, "pi"), "pi");
        sf.value = std::move(s);
    } else {
        throw StructuralError(cat("unknown structure kind '", sf.kind, "'"));
    }
    return sf;
}

StructureFile load_structure_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw StructuralError(cat("cannot open ", file.string()));
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw StructuralError(cat("parse error in ", file.string(), ": ", e.what()));
    }
    return parse_structure(j, file.parent_path());
}

std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

void write_structure_file(const std::filesystem::path& file, const Json& j) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw StructuralError(cat("cannot write ", file.string()));
    out << dump_canonical(j);
}

VerifyOutcome verify_structure(const StructureFile& sf) {
    VerifyOutcome out;
    std::ostringstream os;
    auto render = [&](const ValidationReport& rep) {
        out.valid = rep.valid();
        os << rep.to_string();
    };

    if (sf.kind == "group") {
        render(validate_group(std::get<FiniteAbelianGroup>(sf.value)));
    } else if (sf.kind == "heap") {
        render(validate_heap(std::get<FiniteHeap>(sf.value)));
    } else if (sf.kind == "ring") {
        FiniteRing r = std::get<FiniteRing>(sf.value);
        render(validate_ring(r));
    } else if (sf.kind == "truss") {
        render(validate_truss(std::get<FiniteTruss>(sf.value)));
    } else if (sf.kind == "module") {
        const auto& m = std::get<FiniteTModule>(sf.value);
        ValidationReport tr = validate_truss(m.truss);
        ValidationReport hr = validate_heap(m.heap);
        ValidationReport mr = validate_module(m);
        out.valid = tr.valid() && hr.valid() && mr.valid();
        os << "truss:\n" << tr.to_string() << "carrier heap:\n" << hr.to_string() << "module:\n"
           << mr.to_string();
    } else if (sf.kind == "tgroup") {
        const auto& g = std::get<FiniteTGroup>(sf.value);
        ValidationReport tr = validate_truss(g.truss);
        ValidationReport gr = validate_tgroup(g);
        out.valid = tr.valid() && gr.valid();
        os << "truss:\n" << tr.to_string() << "tgroup:\n" << gr.to_string();
    } else if (sf.kind == "hmodule") {
        const auto& hm = std::get<FiniteHeapOfModules>(sf.value);
        ValidationReport tr = validate_truss(hm.truss);
        ValidationReport hr = validate_heap(hm.heap);
        ValidationReport mr = validate_hmodule(hm);
        out.valid = tr.valid() && hr.valid() && mr.valid();
        os << "truss:\n" << tr.to_string() << "carrier heap:\n" << hr.to_string()
           << "heap of modules:\n" << mr.to_string();
    } else if (sf.kind == "affine") {
        const auto& a = std::get<FiniteTAffineSpace>(sf.value);
        ValidationReport tr = validate_truss(a.group.truss);
        ValidationReport ar = validate_affine(a);
        out.valid = tr.valid() && ar.valid();
        os << "truss:\n" << tr.to_string() << "affine space:\n" << ar.to_string();
    } else if (sf.kind == "spindle") {
        const auto& b = std::get<BinaryStructure>(sf.value);
        BinaryStructure fresh = classify_binary(b.op, b.order);
        bool flags_ok = fresh.flags.shelf == b.flags.shelf &&
                        fresh.flags.spindle == b.flags.spindle &&
                        fresh.flags.rack == b.flags.rack &&
                        fresh.flags.quandle == b.flags.quandle &&
                        fresh.flags.entropic == b.flags.entropic;
        bool div_ok = !b.division || (fresh.division && *fresh.division == *b.division);
        out.valid = flags_ok && div_ok;
        os << "  shelf=" << fresh.flags.shelf << " spindle=" << fresh.flags.spindle
           << " rack=" << fresh.flags.rack << " quandle=" << fresh.flags.quandle
           << " entropic=" << fresh.flags.entropic << "\n";
        if (!flags_ok) os << "  [FAIL] stored flags differ from the recomputed classification\n";
        if (!div_ok) os << "  [FAIL] stored division table differs\n";
    } else if (sf.kind == "ybe") {
        const auto& r = std::get<YbePairMap>(sf.value);
        std::string w;
        bool braid = check_ybe(r, &w);
        out.valid = braid;
        os << (braid ? "  [ok]   braid relation\n" : cat("  [FAIL] ", w, "\n"));
        if (r.inverse) {
            bool inv_ok = true;
            const int n = r.order;
            for (Elem x = 0; x < n && inv_ok; ++x)
                for (Elem y = 0; y < n && inv_ok; ++y) {
                    Elem a = r.first(x, y), b = r.second(x, y);
                    inv_ok = r.inverse->first[size_t(a) * n + b] == x &&
                             r.inverse->second[size_t(a) * n + b] == y;
                }
            out.valid = out.valid && inv_ok;
            os << (inv_ok ? "  [ok]   inverse\n" : "  [FAIL] claimed inverse is wrong\n");
        }
        if (r.nondegenerate) {
            bool nd = r.inverse.has_value();
            const int n = r.order;
            for (Elem y = 0; y < n && nd; ++y) {
                std::vector<char> s1(n, 0), s2(n, 0);
                for (Elem x = 0; x < n; ++x) {
                    Elem v1 = r.first(y, x), v2 = r.second(x, y);
                    if (s1[v1] || s2[v2]) {
                        nd = false;
                        break;
                    }
                    s1[v1] = s2[v2] = 1;
                }
            }
            out.valid = out.valid && nd;
            os << (nd ? "  [ok]   non-degeneracy\n" : "  [FAIL] non-degeneracy claim\n");
        }
    } else if (sf.kind == "sequence") {
        try {
            validate_sequence(std::get<ShortExactSequence>(sf.value));
            out.valid = true;
            os << "  [ok]   short exact sequence\n";
        } catch (const MathError& e) {
            out.valid = false;
            os << "  [FAIL] " << e.what() << "\n";
        }
    }
    out.report = os.str();
    return out;
}

namespace {

template <class T>
void write_entries(const std::vector<Labeled<T>>& items, const std::filesystem::path& dir,
                   std::map<std::string, int>& counts) {
    for (const auto& l : items) {
        write_structure_file(dir / (l.name + ".json"), to_json(l.value));
        std::string key = l.name.substr(0, l.name.rfind('-'));
        ++counts[key];
    }
}

}  // namespace

void write_corpus(const Corpus& corpus, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::map<std::string, int> counts;
    write_entries(corpus.heaps, dir, counts);
    write_entries(corpus.trusses, dir, counts);
    write_entries(corpus.modules, dir, counts);
    write_entries(corpus.hmodules, dir, counts);

    Json manifest;
    manifest["kind"] = "corpus-manifest";
    Json limits;
    limits["heap_max"] = corpus.limits.heap_max;
    limits["truss_max"] = corpus.limits.truss_max;
    limits["module_t_max"] = corpus.limits.module_t_max;
    limits["module_m_max"] = corpus.limits.module_m_max;
    limits["hmodule_t_max"] = corpus.limits.hmodule_t_max;
    limits["hmodule_m_max"] = corpus.limits.hmodule_m_max;
    manifest["limits"] = limits;
    Json cj = Json::object();
    int total = 0;
    for (const auto& [k, v] : counts) {
        cj[k] = v;
        total += v;
    }
    manifest["counts"] = cj;
    manifest["total"] = total;
    write_structure_file(dir / "manifest.json", manifest);
}

Corpus load_corpus(const std::filesystem::path& dir) {
    Corpus corpus;
    if (!std::filesystem::exists(dir / "manifest.json"))
        throw StructuralError(cat("no manifest.json in ", dir.string()));
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().extension() != ".json") continue;
        if (entry.path().filename() == "manifest.json") continue;
        files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        StructureFile sf = load_structure_file(f);
        std::string stem = f.stem().string();
        if (sf.kind == "heap")
            corpus.heaps.push_back({std::get<FiniteHeap>(sf.value), stem});
        else if (sf.kind == "truss")
            corpus.trusses.push_back({std::get<FiniteTruss>(sf.value), stem});
        else if (sf.kind == "module")
            corpus.modules.push_back({std::get<FiniteTModule>(sf.value), stem});
        else if (sf.kind == "hmodule")
            corpus.hmodules.push_back({std::get<FiniteHeapOfModules>(sf.value), stem});
        else
            throw StructuralError(cat("unexpected kind in corpus: ", sf.kind));
    }
    return corpus;
}

}  // namespace finalg
