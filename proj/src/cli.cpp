#include "derange/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "derange/action.hpp"
#include "derange/affine.hpp"
#include "derange/errors.hpp"
#include "derange/io.hpp"
#include "derange/lattice.hpp"
#include "derange/matfp.hpp"
#include "derange/numeric.hpp"
#include "derange/presentation.hpp"
#include "derange/roots.hpp"
#include "derange/todd_coxeter.hpp"

namespace derange {

namespace {

using nlohmann::json;

struct RunConfig {
    long cap_enumeration = kDefaultEnumerationCap;
    long cap_lattice = kDefaultLatticeCap;
    long cap_coset = kDefaultCosetCap;
    long cap_spin = 1 << 20;
    int jobs = 1;
    long seed = 12345;
    bool json_output = false;
};

void validate_config(const RunConfig& cfg) {
    if (cfg.cap_enumeration < 1 || cfg.cap_lattice < 1 || cfg.cap_coset < 1 ||
        cfg.cap_spin < 1)
        throw input_error("caps must be positive");
    if (cfg.jobs < 1) throw input_error("jobs must be positive");
}

json config_echo(const RunConfig& cfg) {
    json j;
    j["cap_coset"] = cfg.cap_coset;
    j["cap_enumeration"] = cfg.cap_enumeration;
    j["cap_lattice"] = cfg.cap_lattice;
    j["cap_spin"] = cfg.cap_spin;
    j["jobs"] = cfg.jobs;
    j["seed"] = cfg.seed;
    return j;
}

// The canonical JSON body goes to the output stream in --json mode; the
// text lines carry the same facts for a human reader. Timing never appears
// in either, only on the error stream.
class Report {
  public:
    Report(const RunConfig& cfg, const std::string& command) : cfg_(cfg) {
        body_["command"] = command;
        body_["config"] = config_echo(cfg);
        lines_.push_back("command: " + command);
        lines_.push_back("config: enumeration=" + std::to_string(cfg.cap_enumeration) +
                         " lattice=" + std::to_string(cfg.cap_lattice) +
                         " coset=" + std::to_string(cfg.cap_coset) +
                         " spin=" + std::to_string(cfg.cap_spin) +
                         " jobs=" + std::to_string(cfg.jobs) +
                         " seed=" + std::to_string(cfg.seed));
    }

    json& body() { return body_; }

    void put(const std::string& key, const json& value, const std::string& text) {
        body_[key] = value;
        lines_.push_back(text);
    }

    void note(const std::string& text) { lines_.push_back(text); }

    void emit() const {
        if (cfg_.json_output) {
            std::cout << body_.dump() << "\n";
            return;
        }
        for (const auto& line : lines_) std::cout << line << "\n";
    }

  private:
    const RunConfig& cfg_;
    json body_;
    std::vector<std::string> lines_;
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string join_sizes(const std::vector<int>& sizes) {
    std::string out;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (i) out += "+";
        out += std::to_string(sizes[i]);
    }
    return out;
}

std::string join_longs(const std::vector<long>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(v[i]);
    }
    return out;
}

std::string rational_string(const bigrational& q) {
    return boost::multiprecision::numerator(q).str() + "/" +
           boost::multiprecision::denominator(q).str();
}

PermGroup group_from_file(const std::string& path) {
    GroupFileData data = load_group_file(path);
    return PermGroup(data.degree, data.generators);
}

std::vector<MatrixFp> matrices_from_file(const MatrixFileData& data,
                                         const std::shared_ptr<const GF>& field) {
    std::vector<MatrixFp> out;
    for (const auto& rows : data.matrices) {
        MatrixFp m(field, data.d);
        for (int r = 0; r < data.d; ++r)
            for (int c = 0; c < data.d; ++c)
                m.set(r, c, rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
        out.push_back(std::move(m));
    }
    return out;
}

json derangement_json(const DerangementReport& r) {
    json j;
    j["found"] = r.found;
    j["classes_examined"] = r.classes_examined;
    j["elements_examined"] = r.elements_examined;
    if (r.witness) {
        j["witness"] = format_cycles(*r.witness);
        j["witness_order"] = r.witness_order.str();
        j["orbit_fixed_counts"] = r.orbit_fixed_counts;
        if (r.witness_prime > 0) j["witness_prime"] = r.witness_prime;
    }
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j;
}

// ---------------------------------------------------------------- check --

void cmd_check(const RunConfig& cfg, const std::string& path) {
    MultiOrbitAction action = realize_action(load_action_file(path));
    Report report(cfg, "check");
    report.put("input", path, "input: " + path);
    report.put("degree", action.domain_size(),
               "degree: " + std::to_string(action.domain_size()));
    std::vector<int> sizes;
    for (const auto& orbit : action.orbits()) sizes.push_back(static_cast<int>(orbit.size()));
    report.put("orbit_sizes", sizes, "orbits: " + join_sizes(sizes));
    report.put("group_order", action.group().order().str(),
               "group order: " + action.group().order().str());

    DerangementReport full = find_derangement(action, cfg.cap_enumeration);
    report.put("derangement", derangement_json(full),
               "derangement: " + (full.found ? format_cycles(*full.witness) : "none"));
    if (full.found)
        report.note("witness order: " + full.witness_order.str());

    if (action.domain_size() > 1) {
        DerangementReport pp = find_prime_power_derangement(action, cfg.cap_enumeration);
        report.put("prime_power", derangement_json(pp),
                   "prime-power derangement: " +
                       (pp.found ? format_cycles(*pp.witness) : "none"));
        if (pp.found) report.note("prime: " + std::to_string(pp.witness_prime));
    }

    if (action.orbit_count() == 2) {
        DerangementReport lift = lift_derangement(action, cfg.cap_enumeration);
        json j = derangement_json(lift);
        j["applicable"] = lift.applicable;
        std::string verdict = !lift.applicable ? "not applicable"
                              : lift.found     ? format_cycles(*lift.witness)
                                               : "none";
        report.put("lifting", j, "lifted derangement: " + verdict);
        for (const auto& note : lift.notes) report.note("  note: " + note);
    }
    report.emit();
}

// ------------------------------------------------------------- covering --

void cmd_covering(const RunConfig& cfg, const std::string& group_path,
                  const std::vector<std::string>& subgroup_paths) {
    PermGroup g = group_from_file(group_path);
    std::vector<PermGroup> subgroups;
    for (const auto& path : subgroup_paths) subgroups.push_back(group_from_file(path));
    CoveringReport rep = is_normal_covering(g, subgroups, cfg.cap_enumeration);

    Report report(cfg, "covering");
    report.put("input", group_path, "group: " + group_path + " (" + rep.group + ")");
    report.put("group", rep.group, "subgroups: " + std::to_string(subgroups.size()));
    report.body()["subgroups"] = rep.subgroups;
    report.put("covered", rep.covered, "covered: " + yes_no(rep.covered));
    report.put("classes_examined", rep.classes_examined,
               "classes examined: " + std::to_string(rep.classes_examined));
    report.put("cross_checked", rep.cross_checked,
               "cross-checked by coset search: " + yes_no(rep.cross_checked));
    if (rep.uncovered_witness) {
        report.put("uncovered_witness", format_cycles(*rep.uncovered_witness),
                   "uncovered element: " + format_cycles(*rep.uncovered_witness));
    }
    report.put("assumptions", rep.notes, "checks recorded: " + std::to_string(rep.notes.size()));
    report.emit();
}

// ----------------------------------------------------- verify-conjecture --

json conjecture_json(const ConjectureReport& r) {
    json j;
    j["group"] = r.group;
    j["class_count"] = r.class_count;
    j["pairs_checked"] = r.pairs_checked;
    j["verified"] = r.verified;
    j["counterexamples"] = r.counterexamples;
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j;
}

void cmd_verify_conjecture(const RunConfig& cfg, const std::string& group_path,
                           const std::string& catalog_name, long max_order) {
    if (group_path.empty() == catalog_name.empty())
        throw input_error("give exactly one of a group file or --catalog default");
    Report report(cfg, "verify-conjecture");
    if (!group_path.empty()) {
        PermGroup g = group_from_file(group_path);
        ConjectureReport r = verify_conjecture(g, cfg.cap_lattice);
        report.put("input", group_path, "group: " + group_path + " (" + r.group + ")");
        report.put("result", conjecture_json(r),
                   "equal-order pairs checked: " + std::to_string(r.pairs_checked));
        report.put("verified", r.verified, "no covering pair: " + yes_no(r.verified));
        for (const auto& c : r.counterexamples) report.note("counterexample: " + c);
        report.emit();
        return;
    }
    if (catalog_name != "default")
        throw input_error("unknown catalog '" + catalog_name + "'");
    std::vector<HarnessResult> results =
        conjecture_harness(default_catalog(), max_order, cfg.jobs, cfg.cap_lattice);
    json groups = json::array();
    long total_pairs = 0;
    long counterexamples = 0;
    for (const HarnessResult& r : results) {
        json item = conjecture_json(r.report);
        item["name"] = r.name;
        item["order"] = r.order.str();
        groups.push_back(std::move(item));
        total_pairs += r.report.pairs_checked;
        counterexamples += static_cast<long>(r.report.counterexamples.size());
        if (!r.report.verified) report.note("counterexample in " + r.name);
    }
    report.put("max_order", max_order, "catalog: default, order cap " + std::to_string(max_order));
    report.body()["groups"] = std::move(groups);
    report.put("group_count", results.size(), "groups checked: " + std::to_string(results.size()));
    report.put("pairs_checked", total_pairs,
               "equal-order pairs checked: " + std::to_string(total_pairs));
    report.put("counterexamples", counterexamples,
               "covering pairs found: " + std::to_string(counterexamples));
    bool verified = counterexamples == 0;
    report.put("verified", verified, "no covering pair anywhere: " + yes_no(verified));
    report.emit();
}

// --------------------------------------------------------- coset-average --

void cmd_coset_average(const RunConfig& cfg, const std::string& group_path,
                       const std::string& element_text, long samples) {
    if (element_text.empty() == (samples == 0))
        throw input_error("give exactly one of an element or --samples");
    PermGroup g = group_from_file(group_path);
    Report report(cfg, "coset-average");
    report.put("input", group_path, "group: " + group_path);
    report.put("group_order", g.order().str(), "group order: " + g.order().str());
    if (!element_text.empty()) {
        Permutation h = parse_cycles(element_text, g.degree());
        bigrational average = coset_average_fixed_points(g, h, cfg.cap_enumeration);
        if (average != 1)
            throw invariant_error("the coset average of fixed points is " +
                                  rational_string(average) + ", not 1");
        report.put("element", format_cycles(h), "element: " + format_cycles(h));
        report.put("average", rational_string(average),
                   "average fixed points over the coset: " + rational_string(average));
        report.emit();
        return;
    }
    std::mt19937_64 rng(static_cast<unsigned long long>(cfg.seed));
    for (long s = 0; s < samples; ++s) {
        std::vector<int> images(static_cast<std::size_t>(g.degree()));
        std::iota(images.begin(), images.end(), 0);
        std::shuffle(images.begin(), images.end(), rng);
        Permutation h(images);
        bigrational average = coset_average_fixed_points(g, h, cfg.cap_enumeration);
        if (average != 1)
            throw invariant_error("the coset average of fixed points is " +
                                  rational_string(average) + " for " + format_cycles(h));
    }
    report.put("samples", samples, "sampled elements: " + std::to_string(samples));
    report.put("all_equal_one", true, "every average equals 1: yes");
    report.emit();
}

// ---------------------------------------------------------------- present --

void cmd_present(const RunConfig& cfg, const std::string& path,
                 const std::vector<std::string>& subgroup_texts) {
    Presentation pr = parse_presentation(read_text_file(path));
    std::vector<std::vector<int>> subgroup_words;
    json words = json::array();
    for (const auto& text : subgroup_texts) {
        subgroup_words.push_back(parse_word(text, pr));
        words.push_back(format_word(subgroup_words.back(), pr));
    }
    CosetEnumeration en = todd_coxeter(pr, subgroup_words, cfg.cap_coset);

    Report report(cfg, "present");
    report.put("input", path, "presentation: " + path);
    report.put("generators", pr.generators, "generators: " + std::to_string(pr.generators.size()));
    report.put("relators", pr.relators.size(), "relators: " + std::to_string(pr.relators.size()));
    if (!subgroup_texts.empty()) {
        report.put("subgroup_words", words,
                   "subgroup words: " + std::to_string(subgroup_texts.size()));
    }
    report.put("coset_count", en.table.coset_count,
               "cosets: " + std::to_string(en.table.coset_count));
    report.put("status", en.table.status == TableStatus::collapsed ? "collapsed" : "complete",
               std::string("status: ") +
                   (en.table.status == TableStatus::collapsed ? "collapsed" : "complete"));
    report.put("image_order", en.group.order().str(),
               "image order: " + en.group.order().str());
    bool regular = subgroup_words.empty();
    report.put("regular", regular, "regular action: " + yes_no(regular));
    if (en.table.coset_count <= 200) {
        json images = json::array();
        for (std::size_t i = 0; i < en.generator_images.size(); ++i) {
            images.push_back(format_cycles(en.generator_images[i]));
            report.note(pr.generators[i] + " -> " + format_cycles(en.generator_images[i]));
        }
        report.body()["generator_images"] = std::move(images);
    }
    report.emit();
}

// ----------------------------------------------------------------- affine --

void cmd_affine(const RunConfig& cfg, const std::string& linear_path,
                const std::string& m_path, const std::string& h_path,
                const std::string& vector_text) {
    MatrixFileData linear_data = load_matrix_file(linear_path);
    auto field = GF::make(linear_data.p);
    std::vector<MatrixFp> linear = matrices_from_file(linear_data, field);

    Report report(cfg, "affine");
    report.put("input", linear_path, "linear generators: " + linear_path);
    report.put("p", linear_data.p, "p: " + std::to_string(linear_data.p));
    report.put("d", linear_data.d, "d: " + std::to_string(linear_data.d));

    if (h_path.empty() && vector_text.empty() && m_path.empty()) {
        AffineRealization ar =
            affine_group(field, linear_data.d, linear, cfg.cap_enumeration);
        report.put("degree", ar.group.degree(), "degree: " + std::to_string(ar.group.degree()));
        report.put("group_order", ar.group.order().str(),
                   "affine group order: " + ar.group.order().str());
        report.put("translation_order", ar.translations.order().str(),
                   "translation subgroup order: " + ar.translations.order().str());
        report.put("linear_order", ar.linear_part.order().str(),
                   "linear part order: " + ar.linear_part.order().str());
        report.put("assumptions",
                   json::array({"translations act regularly",
                                "the stabilizer of zero is the linear part",
                                "the order is the product of both"}),
                   "checks recorded: 3");
        report.emit();
        return;
    }
    if (h_path.empty() || vector_text.empty())
        throw input_error("the witness construction needs both --element and --vector");
    MatrixFileData h_data = load_matrix_file(h_path);
    if (h_data.p != linear_data.p || h_data.d != linear_data.d)
        throw input_error("--element must match the linear file's p and d");
    if (h_data.matrices.size() != 1)
        throw input_error("--element must hold exactly one matrix");
    MatrixFp h = matrices_from_file(h_data, field).front();

    std::vector<MatrixFp> m_subgroup;
    if (!m_path.empty()) {
        MatrixFileData m_data = load_matrix_file(m_path);
        if (m_data.p != linear_data.p || m_data.d != linear_data.d)
            throw input_error("--subgroup must match the linear file's p and d");
        m_subgroup = matrices_from_file(m_data, field);
    }

    std::vector<long> v;
    std::stringstream ss(vector_text);
    std::string part;
    while (std::getline(ss, part, ',')) v.push_back(std::stol(part));
    if (static_cast<int>(v.size()) != linear_data.d)
        throw input_error("--vector needs " + std::to_string(linear_data.d) + " entries");

    AffineWitnessReport rep =
        affine_derangement_from(linear, m_subgroup, h, v, cfg.cap_enumeration);
    report.put("ok", rep.ok, "construction applies: " + yes_no(rep.ok));
    if (!rep.failures.empty()) {
        report.put("failures", rep.failures, "failed preconditions:");
        for (const auto& f : rep.failures) report.note("  " + f);
    }
    if (rep.witness) {
        json w;
        w["translation"] = rep.witness->translation();
        w["matrix"] = rep.witness->linear().to_string();
        report.put("witness", w,
                   "witness translation: (" + join_longs(rep.witness->translation()) +
                       "), linear part: inverse of h");
        report.put("verified", rep.verified,
                   "verified fixed-point-free on both orbits: " + yes_no(rep.verified));
        report.put("domain_points", rep.domain_points,
                   "vector orbit size: " + std::to_string(rep.domain_points));
        report.put("coset_points", rep.coset_points,
                   "coset orbit size: " + std::to_string(rep.coset_points));
    }
    report.emit();
}

// ----------------------------------------------------------------- isbell --

void cmd_isbell(const RunConfig& cfg, const std::string& group_path,
                const std::string& rep_path) {
    PermGroup g = group_from_file(group_path);
    MatrixFileData rep_data = load_matrix_file(rep_path);
    auto field = GF::make(rep_data.p);
    std::vector<MatrixFp> rho = matrices_from_file(rep_data, field);
    if (rho.size() != g.generators().size())
        throw input_error("the representation must give one matrix per group generator");
    IsbellReport rep = isbell_witness(g, rho, cfg.cap_enumeration, cfg.cap_spin);

    Report report(cfg, "isbell");
    report.put("input", group_path, "group: " + group_path);
    report.put("representation", rep_path, "representation: " + rep_path);
    report.put("applicable", rep.applicable, "hypotheses hold: " + yes_no(rep.applicable));
    if (!rep.skipped_reasons.empty()) {
        report.put("skipped_reasons", rep.skipped_reasons, "skipped because:");
        for (const auto& r : rep.skipped_reasons) report.note("  " + r);
    }
    if (rep.applicable) {
        report.put("found", rep.found,
                   "derangement fixing a nonzero vector: " + yes_no(rep.found));
        if (rep.witness) {
            report.put("witness", format_cycles(*rep.witness),
                       "witness: " + format_cycles(*rep.witness));
            report.put("fixed_vector", rep.fixed_vector,
                       "fixed vector: (" + join_longs(rep.fixed_vector) + ")");
        }
    }
    report.emit();
}

// ------------------------------------------------------------------ roots --

void cmd_roots(const RunConfig& cfg, const std::string& type) {
    std::vector<std::string> types;
    if (type == "all")
        types = {"E6", "E7", "E8"};
    else if (type == "E6" || type == "E7" || type == "E8")
        types = {type};
    else
        throw input_error("unknown root system '" + type + "'");

    Report report(cfg, "roots");
    json systems = json::array();
    for (const auto& t : types) {
        RootSystem rs = build_root_system(t);
        TailFilterReport filter = filter_tail_roots(rs);
        json item;
        item["type"] = rs.type;
        item["rank"] = rs.rank;
        item["root_count"] = rs.roots.size();
        item["filter_matches"] = filter.matches.size();
        item["filter_equals_last_simple"] = filter.equals_last_simple;
        item["matched_simple_index"] = filter.matched_simple_index;
        systems.push_back(std::move(item));
        report.note(t + ": " + std::to_string(rs.roots.size()) + " roots; tail filter picks " +
                    std::to_string(filter.matches.size()) + " root(s); equals last simple root: " +
                    yes_no(filter.equals_last_simple));
        if (!filter.equals_last_simple)
            report.note("  discrepancy: the filtered set is not exactly the last simple root");
    }
    report.body()["systems"] = std::move(systems);
    report.emit();
}

// ----------------------------------------------------------------- bounds --

json bounds_factorial_section(Report& report) {
    long checked = 0;
    json mismatches = json::array();
    for (long p = 2; p <= 97; ++p) {
        if (!is_prime(p)) continue;
        for (long m = 0; m <= 2000; ++m) {
            ++checked;
            if (vp_factorial(m, p) != vp_factorial_legendre(m, p))
                mismatches.push_back(json{{"m", m}, {"p", p}});
        }
    }
    json j;
    j["checked"] = checked;
    j["mismatches"] = mismatches;
    report.note("factorial valuations: " + std::to_string(checked) +
                " grid points, digit-sum form vs direct summation, mismatches: " +
                std::to_string(mismatches.size()));
    return j;
}

json bounds_growth_i_section(Report& report) {
    long checked = 0;
    long coprime_failures = 0;
    json boundary = json::array();
    for (long d = 4; d <= 12; ++d)
        for (long r = 2; r <= 50; ++r)
            for (long p = 2; p <= 50; ++p) {
                BoundCheck res = check_bound_i(d, r, p);
                if (!res.hypothesis_met) continue;
                ++checked;
                if (res.coprime && !res.holds) ++coprime_failures;
                if (!res.coprime && !res.holds)
                    boundary.push_back(json{{"d", d}, {"p", p}, {"r", r}});
            }
    json j;
    j["checked"] = checked;
    j["coprime_failures"] = coprime_failures;
    j["non_coprime_failures"] = boundary;
    report.note("first growth bound: " + std::to_string(checked) +
                " admissible points, coprime failures: " + std::to_string(coprime_failures) +
                ", non-coprime boundary failures: " + std::to_string(boundary.size()));
    return j;
}

json bounds_growth_ii_section(Report& report) {
    long checked = 0;
    long failures = 0;
    for (long b = 3; b <= 30; ++b)
        for (long p = 3; p <= 97; ++p)
            for (long f = 1; f <= 12; ++f) {
                BoundCheck res = check_bound_ii(b, p, f);
                if (!res.hypothesis_met) continue;
                ++checked;
                if (!res.holds) ++failures;
            }
    json j;
    j["checked"] = checked;
    j["failures"] = failures;
    report.note("second growth bound: " + std::to_string(checked) +
                " admissible points, failures: " + std::to_string(failures));
    return j;
}

json bounds_table_section(Report& report) {
    long rows = 0;
    long violations = 0;
    for (const LieParams& row : all_lie_params(50)) {
        ++rows;
        if (row.b < row.d - 2) ++violations;
    }
    json records = json::array();
    long record_violations = 0;
    for (const InvariantRecord& rec : shipped_invariant_records()) {
        RecordCheck check = check_invariant_record(rec);
        json item;
        item["label"] = rec.label;
        item["status"] = check.status == RecordStatus::ok         ? "ok"
                         : check.status == RecordStatus::violated ? "violated"
                                                                  : "insufficient data";
        if (check.status == RecordStatus::violated) ++record_violations;
        records.push_back(std::move(item));
    }
    json j;
    j["rows"] = rows;
    j["b_below_d_minus_2"] = violations;
    j["records"] = records;
    report.note("parameter table: " + std::to_string(rows) + " rows, b >= d - 2 violations: " +
                std::to_string(violations));
    report.note("shipped records: " + std::to_string(records.size()) + ", violated: " +
                std::to_string(record_violations));
    return j;
}

void cmd_bounds(const RunConfig& cfg, const std::string& section) {
    const std::set<std::string> known{"all", "factorial", "growth-i", "growth-ii", "table"};
    if (!known.count(section)) throw input_error("unknown bounds section '" + section + "'");
    Report report(cfg, "bounds");
    report.put("section", section, "section: " + section);
    if (section == "all" || section == "factorial")
        report.body()["factorial"] = bounds_factorial_section(report);
    if (section == "all" || section == "growth-i")
        report.body()["growth_i"] = bounds_growth_i_section(report);
    if (section == "all" || section == "growth-ii")
        report.body()["growth_ii"] = bounds_growth_ii_section(report);
    if (section == "all" || section == "table")
        report.body()["table"] = bounds_table_section(report);
    report.emit();
}

// ---------------------------------------------------------------- catalog --

void cmd_catalog(const RunConfig& cfg) {
    std::vector<CatalogEntry> entries = default_catalog();
    if (cfg.json_output) {
        std::cout << catalog_manifest_json(entries) << "\n";
        return;
    }
    for (const CatalogEntry& entry : entries) {
        std::cout << entry.name << " | " << entry.kind << " | degree " << entry.degree
                  << " | order " << entry.order.str() << " | orbits "
                  << join_sizes(entry.orbit_sizes) << "\n";
    }
    std::cout << "entries: " << entries.size() << "\n";
}

}  // namespace

std::vector<HarnessResult> conjecture_harness(const std::vector<CatalogEntry>& entries,
                                              long max_order, int jobs, long lattice_cap) {
    if (jobs < 1) throw input_error("jobs must be positive");
    std::vector<const CatalogEntry*> tasks;
    for (const CatalogEntry& entry : entries)
        if (entry.order <= max_order) tasks.push_back(&entry);

    std::vector<HarnessResult> results(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            try {
                MultiOrbitAction action = tasks[i]->make();
                results[i].name = tasks[i]->name;
                results[i].order = action.group().order();
                results[i].report = verify_conjecture(action.group(), lattice_cap);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (jobs == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    for (const auto& error : errors)
        if (error) std::rethrow_exception(error);
    return results;
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"derangements, normal coverings and coset analysis for finite group actions"};
    app.require_subcommand(1);

    RunConfig cfg;
    app.add_flag("--json", cfg.json_output, "canonical JSON report on the output stream");
    app.add_option("--cap-enumeration", cfg.cap_enumeration, "element enumeration cap");
    app.add_option("--cap-lattice", cfg.cap_lattice, "subgroup lattice order cap");
    app.add_option("--cap-coset", cfg.cap_coset, "coset table cap");
    app.add_option("--cap-spin", cfg.cap_spin, "subspace spin cap");
    app.add_option("--jobs", cfg.jobs, "worker count for the harness");
    app.add_option("--seed", cfg.seed, "seed for sampled checks");

    auto* check = app.add_subcommand("check", "search an action for derangements");
    check->fallthrough();
    std::string check_path;
    check->add_option("action", check_path, "action or group file")->required();
    check->callback([&]() { validate_config(cfg); cmd_check(cfg, check_path); });

    auto* covering = app.add_subcommand("covering", "test a normal covering by subgroups");
    covering->fallthrough();
    std::string covering_group;
    std::vector<std::string> covering_subs;
    covering->add_option("group", covering_group, "group file")->required();
    covering->add_option("--subgroup", covering_subs, "subgroup file (repeatable)")->required();
    covering->callback([&]() {
        validate_config(cfg);
        cmd_covering(cfg, covering_group, covering_subs);
    });

    auto* verify = app.add_subcommand(
        "verify-conjecture", "equal-order subgroup pairs never cover");
    verify->fallthrough();
    std::string verify_path;
    std::string verify_catalog;
    long verify_max_order = 200;
    verify->add_option("group", verify_path, "single group file");
    verify->add_option("--catalog", verify_catalog, "named catalog to sweep");
    verify->add_option("--max-order", verify_max_order, "catalog order cutoff");
    verify->callback([&]() {
        validate_config(cfg);
        cmd_verify_conjecture(cfg, verify_path, verify_catalog, verify_max_order);
    });

    auto* average = app.add_subcommand("coset-average", "exact average of fixed points");
    average->fallthrough();
    std::string average_group;
    std::string average_element;
    long average_samples = 0;
    average->add_option("group", average_group, "transitive group file")->required();
    average->add_option("element", average_element, "permutation in cycle notation");
    average->add_option("--samples", average_samples, "random elements to sample");
    average->callback([&]() {
        validate_config(cfg);
        cmd_coset_average(cfg, average_group, average_element, average_samples);
    });

    auto* present = app.add_subcommand("present", "enumerate cosets of a presentation");
    present->fallthrough();
    std::string present_path;
    std::vector<std::string> present_subs;
    present->add_option("presentation", present_path, "presentation file")->required();
    present->add_option("--subgroup", present_subs, "subgroup generator word (repeatable)");
    present->callback([&]() {
        validate_config(cfg);
        cmd_present(cfg, present_path, present_subs);
    });

    auto* affine = app.add_subcommand("affine", "affine realizations and witness construction");
    affine->fallthrough();
    std::string affine_linear;
    std::string affine_m;
    std::string affine_h;
    std::string affine_vector;
    affine->add_option("linear", affine_linear, "matrix file of linear generators")->required();
    affine->add_option("--subgroup", affine_m, "matrix file generating the normal part M");
    affine->add_option("--element", affine_h, "matrix file holding the single element h");
    affine->add_option("--vector", affine_vector, "comma-separated translation vector");
    affine->callback([&]() {
        validate_config(cfg);
        cmd_affine(cfg, affine_linear, affine_m, affine_h, affine_vector);
    });

    auto* isbell = app.add_subcommand("isbell", "derangement fixing a nonzero vector");
    isbell->fallthrough();
    std::string isbell_group;
    std::string isbell_rep;
    isbell->add_option("group", isbell_group, "transitive group file")->required();
    isbell->add_option("--rep", isbell_rep, "matrix file of generator images")->required();
    isbell->callback([&]() { validate_config(cfg); cmd_isbell(cfg, isbell_group, isbell_rep); });

    auto* roots = app.add_subcommand("roots", "exceptional root systems and the tail filter");
    roots->fallthrough();
    std::string roots_type = "all";
    roots->add_option("type", roots_type, "E6, E7, E8 or all");
    roots->callback([&]() { validate_config(cfg); cmd_roots(cfg, roots_type); });

    auto* bounds = app.add_subcommand("bounds", "valuation identities and growth bounds");
    bounds->fallthrough();
    std::string bounds_section = "all";
    bounds->add_option("section", bounds_section, "factorial, growth-i, growth-ii, table or all");
    bounds->callback([&]() { validate_config(cfg); cmd_bounds(cfg, bounds_section); });

    auto* catalog = app.add_subcommand("catalog", "list the default catalog");
    catalog->fallthrough();
    catalog->callback([&]() { validate_config(cfg); cmd_catalog(cfg); });

    auto start = std::chrono::steady_clock::now();
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const cap_error& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return 2;
    } catch (const invariant_error& e) {
        std::cerr << "invariant violated: " << e.what() << "\n";
        return 3;
    }
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
    std::cerr << "# elapsed_ms " << elapsed << "\n";
    return 0;
}

}  // namespace derange
