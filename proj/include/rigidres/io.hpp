#pragma once

// File formats and report rendering: lattice JSON, simplicial complex files,
// DOT Hasse diagrams, Betti grids, classification reports, resolution dumps
// and the L(n) atlas.

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <istream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "betti.hpp"
#include "classify.hpp"
#include "lattice.hpp"
#include "ln.hpp"
#include "monomial.hpp"
#include "resolution.hpp"

namespace rigidres {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------- lattices

inline Json lattice_to_json(const FiniteAtomicLattice& lattice)
{
    Json elements = Json::array();
    for (Mask m : lattice.elements())
        elements.push_back(atoms_of(m));
    return Json{{"n", lattice.atom_count()}, {"elements", std::move(elements)}};
}

/// Accepts {"n": k, "elements": [[...], ...]} with 1-based atoms.
inline FiniteAtomicLattice lattice_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("n") || !j.contains("elements"))
        throw ParseError(1, "lattice JSON needs fields 'n' and 'elements'");
    if (!j["n"].is_number_unsigned())
        throw ParseError(1, "'n' must be a positive integer");
    const auto n = j["n"].get<unsigned>();
    if (n == 0 || n > kMaxAtoms)
        throw ParseError(1, "'n' out of range");
    if (!j["elements"].is_array())
        throw ParseError(1, "'elements' must be an array");
    std::vector<Mask> family;
    for (const auto& e : j["elements"]) {
        if (!e.is_array())
            throw ParseError(1, "every element must be an array of atoms");
        Mask m = 0;
        for (const auto& a : e) {
            if (!a.is_number_unsigned() || a.get<unsigned>() < 1 || a.get<unsigned>() > n)
                throw ParseError(1, "atom index outside 1.." + std::to_string(n));
            m |= Mask{1} << (a.get<unsigned>() - 1);
        }
        family.push_back(m);
    }
    try {
        return FiniteAtomicLattice::from_family(n, std::move(family));
    } catch (const InvalidLattice& e) {
        throw ParseError(1, e.what());
    }
}

inline FiniteAtomicLattice parse_lattice_json(const std::string& text)
{
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(1, std::string("invalid JSON: ") + e.what());
    }
    return lattice_from_json(j);
}

// --------------------------------------------------------------- complexes

/// "vertices: v" then one facet per line as 1-based vertex indices.
inline SimplicialComplexRep parse_complex(std::istream& in)
{
    std::string raw;
    std::size_t line_no = 0;
    std::optional<unsigned> v;
    std::vector<Mask> facets;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto first = raw.find_first_not_of(" \t\r");
        if (first == std::string::npos || raw[first] == '#')
            continue;
        std::string line = raw.substr(first);
        if (!v) {
            if (line.rfind("vertices:", 0) != 0)
                throw ParseError(line_no, "expected 'vertices:' header");
            std::istringstream s(line.substr(9));
            long long count = 0;
            if (!(s >> count) || count < 1 || count > static_cast<long long>(kMaxAtoms))
                throw ParseError(line_no, "vertex count must be in 1.." + std::to_string(kMaxAtoms));
            v = static_cast<unsigned>(count);
            continue;
        }
        std::istringstream s(line);
        Mask facet = 0;
        std::string tok;
        while (s >> tok) {
            long long x = 0;
            try {
                std::size_t used = 0;
                x = std::stoll(tok, &used);
                if (used != tok.size())
                    throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw ParseError(line_no, "expected a vertex index, got '" + tok + "'");
            }
            if (x < 1 || x > static_cast<long long>(*v))
                throw ParseError(line_no, "vertex " + tok + " outside 1.." + std::to_string(*v));
            facet |= Mask{1} << (x - 1);
        }
        facets.push_back(facet);
    }
    if (!v)
        throw ParseError(line_no + 1, "missing 'vertices:' header (empty input)");
    if (facets.empty())
        throw ParseError(line_no + 1, "no facets");
    try {
        return SimplicialComplexRep::from_faces(*v, std::move(facets));
    } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, e.what());
    }
}

inline SimplicialComplexRep parse_complex(const std::string& text)
{
    std::istringstream in(text);
    return parse_complex(in);
}

inline std::string format_complex(const SimplicialComplexRep& complex)
{
    std::string out = "vertices: " + std::to_string(complex.vertex_count()) + "\n";
    for (Mask f : complex.facets()) {
        const auto atoms = atoms_of(f);
        for (std::size_t i = 0; i < atoms.size(); ++i)
            out += (i ? " " : "") + std::to_string(atoms[i]);
        out += "\n";
    }
    return out;
}

// ------------------------------------------------------------------ inputs

/// Anything the CLI accepts: a monomial ideal, a lattice JSON file or a
/// simplicial complex (via its augmented face lattice).
struct LoadedInput {
    enum class Kind { Ideal, Lattice, Complex };
    Kind kind = Kind::Ideal;
    std::shared_ptr<const FiniteAtomicLattice> lattice;
    std::optional<LcmLattice> lcm;                // ideals only
    std::optional<SimplicialComplexRep> complex;  // complexes only
    std::size_t given_generators = 0;             // before minimalization
};

inline LoadedInput load_input_text(const std::string& text)
{
    LoadedInput in;
    std::istringstream lines(text);
    std::string raw;
    std::string head;
    while (std::getline(lines, raw)) {
        const auto first = raw.find_first_not_of(" \t\r");
        if (first != std::string::npos && raw[first] != '#') {
            head = raw.substr(first);
            break;
        }
    }
    if (!head.empty() && head.front() == '{') {
        in.kind = LoadedInput::Kind::Lattice;
        in.lattice = std::make_shared<const FiniteAtomicLattice>(parse_lattice_json(text));
    } else if (head.rfind("vertices:", 0) == 0) {
        in.kind = LoadedInput::Kind::Complex;
        in.complex = parse_complex(text);
        auto lattice = augmented_face_lattice(*in.complex);
        if (const auto* bad = std::get_if<NotALattice>(&lattice))
            throw ParseError(1, "augmented face poset is not a lattice: " + bad->reason);
        in.lattice = std::make_shared<const FiniteAtomicLattice>(std::get<FiniteAtomicLattice>(std::move(lattice)));
    } else {
        const MonomialIdeal ideal = parse_ideal(text);
        in.given_generators = ideal.generators().size();
        in.lcm.emplace(lcm_lattice(minimalize_generators(ideal)));
        in.lattice = std::make_shared<const FiniteAtomicLattice>(in.lcm->lattice());
    }
    return in;
}

inline LoadedInput load_input_file(const std::string& path)
{
    std::ifstream file(path);
    if (!file)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << file.rdbuf();
    return load_input_text(buf.str());
}

// --------------------------------------------------------- element display

inline std::string element_label(const FiniteAtomicLattice& lattice, const LcmLattice* lcm, Mask m)
{
    if (lcm)
        return lcm->label(m).to_string();
    return m == lattice.top() ? "1̂" : (m == 0 ? "0̂" : support_string(m));
}

/// Grid row degree: total degree of the lcm label, or the support size.
inline std::size_t element_degree(const LcmLattice* lcm, Mask m)
{
    return lcm ? static_cast<std::size_t>(lcm->label(m).total_degree()) : static_cast<std::size_t>(std::popcount(m));
}

// --------------------------------------------------------------------- DOT

inline std::string to_dot(const FiniteAtomicLattice& lattice, const LcmLattice* lcm = nullptr)
{
    std::ostringstream out;
    out << "digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n";
    for (std::size_t i = 0; i < lattice.size(); ++i) {
        const Mask m = lattice.elements()[i];
        std::string label = support_string(m);
        if (lcm)
            label += "\\n" + lcm->label(m).to_string();
        out << "  n" << i << " [label=\"" << label << "\"];\n";
    }
    for (const auto& [upper, lower] : lattice.covers())
        out << "  n" << lattice.index_of(lower) << " -> n" << lattice.index_of(upper) << ";\n";
    out << "}\n";
    return out.str();
}

// -------------------------------------------------------------- Betti grid

/// Macaulay2-style grid: column i, row d lists β_{i,σ} summed over deg σ = i + d.
inline std::string betti_grid(const BettiTable& table, const LcmLattice* lcm = nullptr)
{
    const auto totals = table.totals();
    const std::size_t cols = totals.size();
    std::size_t rows = 0;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> cell;
    for (const auto& [key, value] : table.entries()) {
        const auto [i, m] = key;
        const std::size_t deg = element_degree(lcm, m);
        const std::size_t row = deg >= i ? deg - i : 0;
        cell[{row, i}] += value;
        rows = std::max(rows, row + 1);
    }
    std::vector<std::size_t> width(cols, 1);
    for (std::size_t i = 0; i < cols; ++i) {
        width[i] = std::max(std::to_string(i).size(), std::to_string(totals[i]).size());
        for (const auto& [rc, v] : cell)
            if (rc.second == i)
                width[i] = std::max(width[i], std::to_string(v).size());
    }
    const std::size_t label_width = std::max<std::size_t>(6, std::to_string(rows).size() + 1);
    auto pad_left = [](const std::string& s, std::size_t w) { return std::string(w > s.size() ? w - s.size() : 0, ' ') + s; };

    std::ostringstream out;
    out << std::string(label_width, ' ');
    for (std::size_t i = 0; i < cols; ++i)
        out << ' ' << pad_left(std::to_string(i), width[i]);
    out << "\n" << pad_left("total:", label_width);
    for (std::size_t i = 0; i < cols; ++i)
        out << ' ' << pad_left(std::to_string(totals[i]), width[i]);
    out << "\n";
    for (std::size_t r = 0; r < rows; ++r) {
        out << pad_left(std::to_string(r) + ":", label_width);
        for (std::size_t i = 0; i < cols; ++i) {
            const auto it = cell.find({r, i});
            out << ' ' << pad_left(it == cell.end() ? "." : std::to_string(it->second), width[i]);
        }
        out << "\n";
    }
    return out.str();
}

/// One line per nonzero β_{i,σ}: degree, value, element support and label.
inline std::string multigraded_listing(const BettiTable& table, const LcmLattice* lcm = nullptr)
{
    std::ostringstream out;
    for (std::size_t i = 0; i <= table.max_degree(); ++i)
        for (Mask m : table.betti_elements(i)) {
            out << "beta_" << i << " = " << table.at(i, m) << " at " << support_string(m);
            if (lcm)
                out << " " << lcm->label(m).to_string();
            out << "\n";
        }
    return out.str();
}

inline Json betti_json(const BettiTable& table, const LcmLattice* lcm = nullptr)
{
    Json entries = Json::array();
    for (std::size_t i = 0; i <= table.max_degree(); ++i)
        for (Mask m : table.betti_elements(i)) {
            Json e{{"degree", i}, {"element", atoms_of(m)}, {"value", table.at(i, m)}};
            if (lcm)
                e["multidegree"] = lcm->label(m).to_string();
            entries.push_back(std::move(e));
        }
    return Json{{"field", table.field().name()}, {"totals", table.totals()}, {"entries", std::move(entries)}};
}

// ---------------------------------------------------------- classification

struct Classification {
    FieldSpec field;
    std::vector<std::size_t> totals;
    RigidityReport rigidity;
    ConcentrationReport concentration;
    LatticeLinearityReport linearity;
    InvarianceReport invariance;
};

/// Runs every predicate; a plain lattice is coordinatized for lattice-linearity.
inline Classification classify(const FiniteAtomicLattice& lattice, const LcmLattice* lcm, const FieldSpec& field)
{
    const BettiTable table = betti_table(lattice, field);
    Classification c{field, table.totals(), is_rigid(table), is_concentrated(table), {},
                     interval_homology_invariance(table)};
    const LcmLattice realized = lcm ? *lcm : lcm_lattice(coordinatize(lattice));
    c.linearity.lattice_linear = lattice_linear_support(minimal_resolution(realized.ideal(), field), realized);
    c.linearity.certificate_only = !c.rigidity.rigid;
    return c;
}

inline std::string classification_text(const Classification& c, const FiniteAtomicLattice& lattice,
                                       const LcmLattice* lcm = nullptr)
{
    auto name = [&](Mask m) { return element_label(lattice, lcm, m); };
    std::ostringstream out;
    out << "field: " << c.field.name() << "\n";
    out << "betti totals:";
    for (auto t : c.totals)
        out << ' ' << t;
    out << "\n";
    const auto& r = c.rigidity;
    if (r.rigid)
        out << "rigid: yes\n";
    else if (r.violation == RigidityReport::Violation::R1)
        out << "rigid: no (R1: beta_" << r.degree << " = " << r.value << " at " << name(r.first) << ")\n";
    else
        out << "rigid: no (R2: in degree " << r.degree << ", " << name(r.first) << " < " << name(r.second) << ")\n";
    const auto& k = c.concentration;
    if (k.concentrated)
        out << "concentrated: yes\n";
    else
        out << "concentrated: no (witness " << name(*k.non_contributor) << " lies below contributing "
            << name(*k.contributor) << ")\n";
    out << "lattice-linear: " << (c.linearity.lattice_linear ? "yes" : "no");
    if (c.linearity.certificate_only)
        out << " (for the computed basis; ideal not rigid)";
    out << "\n";
    out << "interval homology invariance: " << (c.invariance.invariant ? "yes" : "no");
    if (c.invariance.witness)
        out << " (fails at " << name(*c.invariance.witness) << ")";
    out << "\n";
    return out.str();
}

inline Json classification_json(const Classification& c, const FiniteAtomicLattice& lattice,
                                const LcmLattice* lcm = nullptr)
{
    auto elem = [&](Mask m) {
        Json e{{"element", atoms_of(m)}};
        if (lcm)
            e["multidegree"] = lcm->label(m).to_string();
        return e;
    };
    Json j{{"field", c.field.name()}, {"totals", c.totals}};
    Json rig{{"rigid", c.rigidity.rigid}};
    if (!c.rigidity.rigid) {
        rig["violation"] = c.rigidity.violation == RigidityReport::Violation::R1 ? "R1" : "R2";
        rig["degree"] = c.rigidity.degree;
        rig["first"] = elem(c.rigidity.first);
        if (c.rigidity.violation == RigidityReport::Violation::R2)
            rig["second"] = elem(c.rigidity.second);
        else
            rig["value"] = c.rigidity.value;
    }
    j["rigidity"] = std::move(rig);
    Json con{{"concentrated", c.concentration.concentrated}};
    if (!c.concentration.concentrated) {
        con["witness"] = elem(*c.concentration.non_contributor);
        con["contributor"] = elem(*c.concentration.contributor);
    }
    j["concentration"] = std::move(con);
    j["lattice_linear"] = {{"lattice_linear", c.linearity.lattice_linear},
                           {"certificate_only", c.linearity.certificate_only}};
    Json inv{{"invariant", c.invariance.invariant}};
    if (c.invariance.witness)
        inv["witness"] = elem(*c.invariance.witness);
    j["interval_homology_invariance"] = std::move(inv);
    return j;
}

// ------------------------------------------------------------- resolutions

inline Json resolution_json(const MultigradedFreeResolution& res)
{
    Json degrees = Json::array();
    for (std::size_t i = 0; i <= res.length(); ++i) {
        Json basis = Json::array();
        for (const auto& m : res.basis(i))
            basis.push_back(m.to_string());
        Json d{{"degree", i}, {"basis", std::move(basis)}};
        if (i > 0) {
            const auto& mat = res.differential(i);
            Json rows = Json::array();
            for (std::size_t r = 0; r < mat.rows(); ++r) {
                Json row = Json::array();
                for (std::size_t c = 0; c < mat.cols(); ++c)
                    row.push_back(mat(r, c).to_string());
                rows.push_back(std::move(row));
            }
            d["differential"] = std::move(rows);
        }
        degrees.push_back(std::move(d));
    }
    return Json{{"field", res.field().name()}, {"vars", res.ring()->names}, {"ranks", res.ranks()},
                {"minimal", res.is_minimal()}, {"degrees", std::move(degrees)}};
}

// ------------------------------------------------------------------- atlas

inline Json key_json(const LnKey& key)
{
    Json masks = Json::array();
    for (Mask m : key.masks)
        masks.push_back(m);
    return masks;
}

/// One JSON line per lattice, ordered by key.
inline std::string atlas_jsonl(const Strata& strata)
{
    std::vector<std::pair<const MemberInfo*, const StratumRecord*>> all;
    for (const auto& [beta, rec] : strata)
        for (const auto& m : rec.members)
            all.emplace_back(&m, &rec);
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first->key < b.first->key; });
    std::string out;
    for (const auto& [m, rec] : all) {
        const Json line{{"key", key_json(m->key)}, {"n", m->key.n}, {"betti", rec->betti},
                        {"rigid", m->rigid},       {"concentrated", m->concentrated},
                        {"field", rec->field.name()}};
        out += line.dump() + "\n";
    }
    return out;
}

/// Intra-stratum cover edges, one JSON line each, in stratum then cover order.
inline std::string atlas_edges_jsonl(const Strata& strata)
{
    std::string out;
    for (const auto& [beta, rec] : strata)
        for (const auto& [lo, hi] : rec.covers) {
            const Json line{{"betti", beta},
                            {"lower", key_json(rec.members[lo].key)},
                            {"upper", key_json(rec.members[hi].key)}};
            out += line.dump() + "\n";
        }
    return out;
}

/// Per-stratum summary lines: Betti vector, size, rigid and concentrated
/// counts, and the minimal members (not asserted unique).
inline std::string strata_summary(const Strata& strata)
{
    std::ostringstream out;
    for (const auto& [beta, rec] : strata) {
        std::size_t rigid = 0, concentrated = 0;
        std::vector<bool> has_lower(rec.members.size(), false);
        for (const auto& m : rec.members) {
            rigid += m.rigid;
            concentrated += m.concentrated;
        }
        for (const auto& [lo, hi] : rec.covers)
            has_lower[hi] = true;
        out << "(";
        for (std::size_t i = 0; i < beta.size(); ++i)
            out << (i ? "," : "") << beta[i];
        out << "): " << rec.members.size() << " lattices, " << rigid << " rigid, " << concentrated
            << " concentrated, " << std::count(has_lower.begin(), has_lower.end(), false) << " minimal\n";
    }
    return out.str();
}

namespace detail {

inline LnKey key_from_json(const Json& j, std::size_t line_no)
{
    if (!j.contains("key") || !j["key"].is_array() || !j.contains("n") || !j["n"].is_number_unsigned())
        throw ParseError(line_no, "atlas record needs 'key' and 'n'");
    LnKey key{j["n"].get<unsigned>(), {}};
    for (const auto& m : j["key"]) {
        if (!m.is_number_unsigned())
            throw ParseError(line_no, "key entries must be bitmasks");
        key.masks.push_back(m.get<Mask>());
    }
    return key;
}

inline LnKey key_from_masks(const Json& masks, unsigned n, std::size_t line_no)
{
    Json j{{"key", masks}, {"n", n}};
    return key_from_json(j, line_no);
}

template <typename Each>
void for_each_json_line(std::istream& in, Each&& each)
{
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        Json j;
        try {
            j = Json::parse(line);
        } catch (const Json::parse_error& e) {
            throw ParseError(line_no, std::string("invalid JSON: ") + e.what());
        }
        each(j, line_no);
    }
}

} // namespace detail

/// Reads an atlas written by atlas_jsonl / atlas_edges_jsonl back into strata.
/// Records must share one field and one n; edges must join members of the
/// stratum they name.
inline Strata strata_from_jsonl(std::istream& atlas, std::istream& edges)
{
    Strata strata;
    std::optional<FieldSpec> field;
    unsigned n = 0;
    detail::for_each_json_line(atlas, [&](const Json& j, std::size_t line_no) {
        const LnKey key = detail::key_from_json(j, line_no);
        if (!j.contains("betti") || !j.contains("rigid") || !j.contains("concentrated") || !j.contains("field"))
            throw ParseError(line_no, "atlas record needs 'betti', 'rigid', 'concentrated' and 'field'");
        FieldSpec f;
        try {
            f = FieldSpec::parse(j["field"].get<std::string>());
        } catch (const std::exception& e) {
            throw ParseError(line_no, e.what());
        }
        if (field && !(*field == f))
            throw ParseError(line_no, "atlas mixes fields");
        if (field && key.n != n)
            throw ParseError(line_no, "atlas mixes atom counts");
        field = f;
        n = key.n;
        const auto betti = j["betti"].get<BettiVector>();
        auto& rec = strata[betti];
        rec.field = f;
        rec.betti = betti;
        rec.members.push_back({key, j["rigid"].get<bool>(), j["concentrated"].get<bool>()});
    });
    for (auto& [beta, rec] : strata) {
        std::sort(rec.members.begin(), rec.members.end(),
                  [](const MemberInfo& a, const MemberInfo& b) { return a.key < b.key; });
        for (std::size_t i = 1; i < rec.members.size(); ++i)
            if (rec.members[i - 1].key == rec.members[i].key)
                throw ParseError(1, "duplicate atlas record");
    }
    detail::for_each_json_line(edges, [&](const Json& j, std::size_t line_no) {
        if (!j.contains("betti") || !j.contains("lower") || !j.contains("upper"))
            throw ParseError(line_no, "edge record needs 'betti', 'lower' and 'upper'");
        const auto it = strata.find(j["betti"].get<BettiVector>());
        if (it == strata.end())
            throw ParseError(line_no, "edge names an unknown stratum");
        const auto lo = it->second.index_of(detail::key_from_masks(j["lower"], n, line_no));
        const auto hi = it->second.index_of(detail::key_from_masks(j["upper"], n, line_no));
        if (!lo || !hi)
            throw ParseError(line_no, "edge endpoint is not a member of its stratum");
        it->second.covers.emplace_back(*lo, *hi);
    });
    return strata;
}

} // namespace rigidres
