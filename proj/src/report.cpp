#include "qrep/report.hpp"

#include <chrono>
#include <sstream>

#include "qrep/counts.hpp"
#include "qrep/graph.hpp"
#include "qrep/predict.hpp"

namespace qrep {

namespace {

double ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

Json json_or_inf(const std::optional<std::int64_t>& v) {
    if (v) return *v;
    return "inf";
}

Json diameter_json(const DiameterPrediction& p) {
    switch (p.kind) {
    case DiameterPrediction::Kind::Exact: return p.value;
    case DiameterPrediction::Kind::Infinite: return "inf";
    case DiameterPrediction::Kind::Interval: return Json{{"interval", {p.lo, p.hi}}};
    }
    return nullptr;
}

Json field_json(const std::string& spec, const Field& field) {
    Json j;
    j["spec"] = spec;
    j["p"] = field.characteristic();
    j["m"] = field.extension_degree();
    j["f"] = field.order();
    j["modulus"] = field.modulus();
    return j;
}

Json form_json(const std::string& dsl, const QuadraticForm& q) {
    CanonicalType type = q.classify();
    Json j;
    j["dsl"] = dsl;
    j["dim"] = q.dim();
    j["canonical"] = type.canonical_dsl(*q.field());
    j["isotropic"] = q.is_isotropic();
    if (q.dim() % 2 == 0) j["hyperbolic"] = type.hyperbolic;
    if (type.char2)
        j["disc"] = type.arf_trivial ? "arf-trivial" : "arf-nontrivial";
    else
        j["disc"] = type.det_class == SquareClass::Square ? "det-square" : "det-nonsquare";
    return j;
}

} // namespace

InvariantReport build_report(const std::string& field_spec, const std::string& form_dsl,
                             std::uint32_t a, const ReportOptions& options) {
    FieldPtr field = parse_field_spec(field_spec);
    QuadraticForm q = parse_form(field, form_dsl);
    if (a >= field->order())
        fail(ErrorCode::ParseError, "a = " + std::to_string(a) +
                                        " is not an element encoding of a field of order " +
                                        std::to_string(field->order()));

    InvariantReport report;
    Json& doc = report.doc;
    doc["schema"] = 1;
    doc["field"] = field_json(field_spec, *field);
    doc["form"] = form_json(form_dsl, q);
    doc["a"] = a;

    auto t0 = std::chrono::steady_clock::now();
    bool p_connected = predict_connected(q, a);
    DiameterPrediction p_diam = predict_diameter(q, a);
    GirthPrediction p_girth = predict_girth(q, a);
    TriangleCountPrediction p_tri = predict_triangles(q, a);
    FourCyclePrediction p_four = predict_four_cycles(q, a);
    double predict_ms = ms_since(t0);

    Json predicted;
    predicted["connected"] = p_connected;
    predicted["diameter"] = diameter_json(p_diam);
    predicted["diameter_clause"] = p_diam.clause;
    predicted["girth"] = json_or_inf(p_girth.girth);
    predicted["girth_clause"] = p_girth.clause;
    predicted["triangles"] = Json{{"c1", p_tri.c1},
                                  {"c2", p_tri.c2},
                                  {"total", p_tri.total},
                                  {"route", route_name(p_tri.route)}};
    predicted["four_cycles"] = p_four.total ? Json(*p_four.total) : Json(nullptr);
    predicted["four_cycles_clause"] = p_four.clause;
    doc["predicted"] = predicted;

    double bruteforce_ms = 0.0;
    if (options.bruteforce) {
        auto t1 = std::chrono::steady_clock::now();
        GraphJob job{q, a, options.max_vertices, options.threads};
        std::int64_t components = component_count(job);
        DistanceSpectrum spectrum = distance_spectrum(job);
        std::optional<std::int64_t> girth = girth_bruteforce(job);
        TriangleCensus tri = triangle_census(job);
        FourCycleCensus four = four_cycle_census(job);
        bruteforce_ms = ms_since(t1);

        Json oracle;
        oracle["components"] = components;
        oracle["connected"] = components == 1;
        oracle["diameter"] = json_or_inf(spectrum.diameter);
        oracle["girth"] = json_or_inf(girth);
        oracle["triangles"] = Json{{"c1", tri.c1},
                                   {"c2", tri.c2},
                                   {"through_origin", tri.through_origin},
                                   {"total", tri.total}};
        oracle["four_cycles"] =
            Json{{"through_origin", four.through_origin}, {"total", four.total}};
        doc["bruteforce"] = oracle;

        Json match;
        match["connected"] = p_connected == (components == 1);
        match["diameter"] = p_diam.matches(spectrum.diameter);
        match["girth"] = p_girth.girth == girth;
        match["triangles"] =
            p_tri.c1 == tri.c1 && p_tri.c2 == tri.c2 && p_tri.total == tri.total;
        if (p_four.total) match["four_cycles"] = *p_four.total == four.total;
        doc["match"] = match;

        report.all_match = true;
        for (const auto& [key, ok] : match.items())
            if (!ok.get<bool>()) report.all_match = false;
    }

    if (options.timing) {
        Json timing;
        timing["predict_ms"] = predict_ms;
        if (options.bruteforce) timing["bruteforce_ms"] = bruteforce_ms;
        doc["timing"] = timing;
    }
    return report;
}

std::string classify_text(const std::string& field_spec, const std::string& form_dsl) {
    FieldPtr field = parse_field_spec(field_spec);
    QuadraticForm q = parse_form(field, form_dsl);
    CanonicalType type = q.classify();
    WittDecomposition witt = witt_decompose(q);
    std::ostringstream os;
    os << "field: GF(" << field->order() << ") [" << field->spec_string() << "]\n";
    os << "form: " << form_dsl << "\n";
    os << "dimension: " << q.dim() << "\n";
    os << "isotropic: " << (q.is_isotropic() ? "yes" : "no") << "\n";
    os << "witt_index: " << witt.witt_index << "\n";
    if (type.char2)
        os << "arf: " << (type.arf_trivial ? "trivial (in wp(F))" : "nontrivial") << "\n";
    else
        os << "determinant_class: "
           << (type.det_class == SquareClass::Square ? "square" : "nonsquare") << "\n";
    if (q.dim() % 2 == 0)
        os << "hyperbolic: " << (type.hyperbolic ? "yes" : "no") << "\n";
    os << "canonical: " << type.canonical_dsl(*field) << "\n";
    return os.str();
}

std::vector<std::uint64_t> prime_powers_in(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t f = std::max<std::uint64_t>(lo, 2); f <= hi; ++f) {
        std::uint64_t p = 2;
        while (p * p <= f && f % p != 0) ++p;
        if (f % p != 0) p = f;
        std::uint64_t rest = f;
        while (rest % p == 0) rest /= p;
        if (rest == 1) out.push_back(f);
    }
    return out;
}

std::vector<SweepRow> run_sweep(const std::string& form_dsl, std::uint64_t lo,
                                std::uint64_t hi, bool all_a, SweepMode mode,
                                std::uint64_t max_vertices, unsigned threads,
                                std::uint32_t a_default) {
    std::vector<SweepRow> rows;
    for (std::uint64_t f : prime_powers_in(lo, hi)) {
        FieldPtr field = parse_field_spec("q=" + std::to_string(f));
        std::optional<QuadraticForm> form;
        try {
            form = parse_form(field, form_dsl);
        } catch (const Error& e) {
            // the form template may not exist over every field in range
            SweepRow row;
            row.f = f;
            row.a = a_default;
            row.predicted = "-";
            row.oracle = "-";
            row.status = SweepRow::Status::Error;
            row.note = error_code_name(e.code());
            rows.push_back(std::move(row));
            continue;
        }
        const QuadraticForm& q = *form;
        std::vector<std::uint32_t> a_values;
        if (all_a) {
            for (std::uint64_t a = 0; a < f; ++a)
                a_values.push_back(static_cast<std::uint32_t>(a));
        } else {
            if (a_default >= f) {
                SweepRow row;
                row.f = f;
                row.a = a_default;
                row.predicted = "-";
                row.oracle = "-";
                row.status = SweepRow::Status::Error;
                row.note = "a-out-of-range";
                rows.push_back(std::move(row));
                continue;
            }
            a_values.push_back(a_default);
        }

        for (std::uint32_t a : a_values) {
            SweepRow row;
            row.f = f;
            row.a = a;
            DiameterPrediction prediction = predict_diameter(q, a);
            row.predicted = prediction.to_string();
            try {
                GraphJob job{q, a, max_vertices, threads};
                DistanceSpectrum spectrum = distance_spectrum(job);
                row.oracle = spectrum.diameter ? std::to_string(*spectrum.diameter) : "inf";
                if (!prediction.matches(spectrum.diameter)) {
                    row.status = SweepRow::Status::Mismatch;
                    row.note = "diameter-mismatch";
                }
                if (mode == SweepMode::All && row.status == SweepRow::Status::Ok) {
                    ReportOptions options;
                    options.bruteforce = true;
                    options.max_vertices = max_vertices;
                    options.threads = threads;
                    options.timing = false;
                    InvariantReport full = build_report("q=" + std::to_string(f), form_dsl,
                                                        a, options);
                    if (!full.all_match) {
                        row.status = SweepRow::Status::Mismatch;
                        row.note = "mismatch:";
                        for (const auto& [key, ok] : full.doc["match"].items())
                            if (!ok.get<bool>()) row.note += " " + key;
                    }
                }
            } catch (const Error& e) {
                if (e.code() != ErrorCode::CapExceeded) throw;
                row.oracle = "-";
                row.status = SweepRow::Status::CapExceeded;
                row.note = "cap-exceeded";
            }
            row.match = row.status == SweepRow::Status::Ok;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::string format_sweep_table(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << "f\ta\tpredicted\toracle\tmatch\tnote\n";
    for (const auto& row : rows)
        os << row.f << "\t" << row.a << "\t" << row.predicted << "\t" << row.oracle << "\t"
           << (row.match ? "yes" : "no") << "\t" << row.note << "\n";
    return os.str();
}

} // namespace qrep
