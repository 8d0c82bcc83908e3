#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include <cychom/errors.hpp>
#include <cychom/precyclic.hpp>

namespace cychom {

struct ModuleMetadata {
    std::string name, description;
};

namespace io_detail {

using nlohmann::json;

// Doubles hold integers faithfully up to 2^53; anything larger is written as
// a decimal string so the file survives tools that parse numbers as doubles.
inline const Int& json_safe_bound() {
    static const Int bound = Int(1) << 53;
    return bound;
}

inline json int_to_json(const Int& v) {
    if (int_abs(v) <= json_safe_bound()) return json(static_cast<std::int64_t>(v));
    return json(v.str());
}

inline Int int_from_json(const json& j, const std::string& where) {
    if (j.is_number_integer()) {
        if (j.is_number_unsigned()) return Int(j.get<std::uint64_t>());
        return Int(j.get<std::int64_t>());
    }
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        const std::size_t start = !s.empty() && s[0] == '-' ? 1 : 0;
        if (start == s.size())
            throw ParseError(where + ": not a decimal integer: \"" + s + "\"");
        for (std::size_t i = start; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9')
                throw ParseError(where + ": not a decimal integer: \"" + s + "\"");
        return Int(s);
    }
    throw ParseError(where + ": expected an integer (or a decimal string), got " +
                     std::string(j.type_name()));
}

inline std::size_t size_from_json(const json& j, const std::string& where) {
    if (j.is_number_unsigned()) return j.get<std::size_t>();
    if (j.is_number_integer() && j.get<std::int64_t>() >= 0)
        return static_cast<std::size_t>(j.get<std::int64_t>());
    throw ParseError(where + ": expected a nonnegative integer");
}

inline const json& member(const json& j, const std::string& key, const std::string& where) {
    if (!j.is_object() || !j.contains(key))
        throw ParseError(where + ": missing \"" + key + "\"");
    return j.at(key);
}

} // namespace io_detail

inline nlohmann::json matrix_to_json(const Matrix& m) {
    nlohmann::json entries = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) entries.push_back(io_detail::int_to_json(m(i, j)));
    return nlohmann::json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

inline Matrix matrix_from_json(const nlohmann::json& j, const std::string& where) {
    using io_detail::member;
    const std::size_t rows = io_detail::size_from_json(member(j, "rows", where), where + ".rows");
    const std::size_t cols = io_detail::size_from_json(member(j, "cols", where), where + ".cols");
    const nlohmann::json& entries = member(j, "entries", where);
    if (!entries.is_array() || entries.size() != rows * cols)
        throw ParseError(where + ": expected " + std::to_string(rows * cols) +
                         " row-major entries");
    Matrix m(rows, cols);
    std::size_t k = 0;
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t jj = 0; jj < cols; ++jj, ++k)
            m(i, jj) = io_detail::int_from_json(entries[k],
                                                where + ".entries[" + std::to_string(k) + "]");
    return m;
}

inline nlohmann::json module_to_json(const PrecyclicModule& m, const ModuleMetadata& meta = {}) {
    nlohmann::json doc;
    doc["format"] = "cychom-module";
    doc["metadata"] = {{"name", meta.name}, {"description", meta.description}};
    doc["max_degree"] = m.max_degree();
    doc["ranks"] = m.ranks;
    nlohmann::json faces = nlohmann::json::object();
    for (std::size_t n = 1; n <= m.max_degree(); ++n) {
        nlohmann::json list = nlohmann::json::array();
        for (const Matrix& f : m.faces[n]) list.push_back(matrix_to_json(f));
        faces[std::to_string(n)] = std::move(list);
    }
    doc["faces"] = std::move(faces);
    nlohmann::json cyclic = nlohmann::json::object();
    for (std::size_t n = 0; n <= m.max_degree(); ++n)
        cyclic[std::to_string(n)] = matrix_to_json(m.cyclic[n]);
    doc["cyclic"] = std::move(cyclic);
    if (m.has_last_degeneracy()) {
        nlohmann::json degen = nlohmann::json::object();
        for (std::size_t n = 0; n + 1 <= m.max_degree(); ++n)
            degen[std::to_string(n)] = matrix_to_json(m.last_degeneracy[n]);
        doc["last_degeneracy"] = std::move(degen);
    }
    return doc;
}

inline PrecyclicModule module_from_json(const nlohmann::json& doc,
                                        ModuleMetadata* meta = nullptr) {
    using io_detail::member;
    if (!doc.is_object()) throw ParseError("module document: expected a JSON object");
    if (doc.contains("format") && doc["format"] != "cychom-module")
        throw ParseError("module document: unrecognized format tag");
    if (meta != nullptr && doc.contains("metadata")) {
        const nlohmann::json& md = doc["metadata"];
        if (md.is_object()) {
            meta->name = md.value("name", "");
            meta->description = md.value("description", "");
        }
    }

    const std::size_t top =
        io_detail::size_from_json(member(doc, "max_degree", "module document"), "max_degree");
    const nlohmann::json& ranks = member(doc, "ranks", "module document");
    if (!ranks.is_array() || ranks.size() != top + 1)
        throw ParseError("ranks: expected " + std::to_string(top + 1) +
                         " entries for max_degree " + std::to_string(top));

    PrecyclicModule m;
    for (std::size_t n = 0; n <= top; ++n)
        m.ranks.push_back(io_detail::size_from_json(ranks[n], "ranks[" + std::to_string(n) + "]"));

    const nlohmann::json& faces = member(doc, "faces", "module document");
    if (!faces.is_object() || faces.size() != top)
        throw ParseError("faces: expected one entry per degree 1.." + std::to_string(top));
    m.faces.emplace_back();
    for (std::size_t n = 1; n <= top; ++n) {
        const std::string key = std::to_string(n);
        const std::string where = "faces[" + key + "]";
        const nlohmann::json& list = member(faces, key, "faces");
        if (!list.is_array() || list.size() != n + 1)
            throw ParseError(where + ": degree " + key + " has " + std::to_string(n + 1) +
                             " faces");
        std::vector<Matrix> fs;
        for (std::size_t i = 0; i <= n; ++i)
            fs.push_back(matrix_from_json(list[i], where + "[" + std::to_string(i) + "]"));
        m.faces.push_back(std::move(fs));
    }

    const nlohmann::json& cyclic = member(doc, "cyclic", "module document");
    if (!cyclic.is_object() || cyclic.size() != top + 1)
        throw ParseError("cyclic: expected one matrix per degree 0.." + std::to_string(top));
    for (std::size_t n = 0; n <= top; ++n) {
        const std::string key = std::to_string(n);
        m.cyclic.push_back(matrix_from_json(member(cyclic, key, "cyclic"), "cyclic[" + key + "]"));
    }

    if (doc.contains("last_degeneracy")) {
        const nlohmann::json& degen = doc["last_degeneracy"];
        if (!degen.is_object() || degen.size() != top)
            throw ParseError("last_degeneracy: expected one matrix per degree below " +
                             std::to_string(top));
        for (std::size_t n = 0; n + 1 <= top; ++n) {
            const std::string key = std::to_string(n);
            m.last_degeneracy.push_back(matrix_from_json(member(degen, key, "last_degeneracy"),
                                                         "last_degeneracy[" + key + "]"));
        }
    }

    try {
        validate_precyclic_shapes(m);
    } catch (const ShapeError& e) {
        throw ParseError(std::string("module document: ") + e.what());
    }
    return m;
}

inline void write_module_file(const std::string& path, const PrecyclicModule& m,
                              const ModuleMetadata& meta = {}) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open " + path + " for writing");
    out << module_to_json(m, meta).dump(2) << '\n';
    if (!out) throw ParseError("failed while writing " + path);
}

inline PrecyclicModule read_module_file(const std::string& path, ModuleMetadata* meta = nullptr) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return module_from_json(doc, meta);
}

} // namespace cychom
