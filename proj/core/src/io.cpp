// Copyright 2026 The qest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qest/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qest/errors.hpp"

namespace qest::io {

using nlohmann::json;

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

Cplx parse_complex(const json& node, const std::string& where) {
    if (!node.is_array() || node.size() != 2 || !node[0].is_number() ||
        !node[1].is_number()) {
        throw ParseError(where + ": expected a [re, im] pair");
    }
    return {node[0].get<double>(), node[1].get<double>()};
}

CVec parse_cvec(const json& node, Eigen::Index dim, const std::string& where) {
    if (!node.is_array()) throw ParseError(where + ": expected an array");
    if (static_cast<Eigen::Index>(node.size()) != dim) {
        throw ParseError(where + ": expected " + std::to_string(dim) + " entries, got " +
                         std::to_string(node.size()));
    }
    CVec v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        v(i) = parse_complex(node[static_cast<std::size_t>(i)],
                             where + "[" + std::to_string(i) + "]");
    }
    return v;
}

CMat parse_cmat(const json& node, Eigen::Index dim, const std::string& where) {
    if (!node.is_array()) throw ParseError(where + ": expected a matrix (array of rows)");
    if (static_cast<Eigen::Index>(node.size()) != dim) {
        throw ParseError(where + ": expected " + std::to_string(dim) + " rows, got " +
                         std::to_string(node.size()));
    }
    CMat m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        m.row(i) = parse_cvec(node[static_cast<std::size_t>(i)], dim,
                              where + "[" + std::to_string(i) + "]")
                       .transpose();
    }
    return m;
}

Mat2 parse_weight(const json& node, const std::string& where) {
    if (!node.is_array() || node.size() != 2) {
        throw ParseError(where + ": expected a 2x2 matrix of reals");
    }
    Mat2 w;
    for (int i = 0; i < 2; ++i) {
        const json& row = node[static_cast<std::size_t>(i)];
        if (!row.is_array() || row.size() != 2 || !row[0].is_number() ||
            !row[1].is_number()) {
            throw ParseError(where + "[" + std::to_string(i) + "]: expected two reals");
        }
        w(i, 0) = row[0].get<double>();
        w(i, 1) = row[1].get<double>();
    }
    return w;
}

const json& require_field(const json& obj, const char* key, const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(where + ": missing field \"" + key + "\"");
    return *it;
}

} // namespace

ModelFile parse_model_json(const std::string& text) {
    const json root = parse_json_text(text);
    if (!root.is_object()) throw ParseError("model file: top level must be an object");

    const json& dim_node = require_field(root, "dim", "model file");
    if (!dim_node.is_number_integer() || dim_node.get<long>() < 2) {
        throw ParseError("dim: expected an integer >= 2");
    }
    const auto dim = static_cast<Eigen::Index>(dim_node.get<long>());
    const Mat2 weight = parse_weight(require_field(root, "weight", "model file"), "weight");

    ModelFile out;
    if (root.contains("psi0") || root.contains("dpsi")) {
        PureModel m;
        m.psi0 = parse_cvec(require_field(root, "psi0", "model file"), dim, "psi0");
        const json& dpsi = require_field(root, "dpsi", "model file");
        if (!dpsi.is_array() || dpsi.size() != 2) {
            throw ParseError("dpsi: expected exactly two derivative vectors");
        }
        m.dpsi = {parse_cvec(dpsi[0], dim, "dpsi[0]"), parse_cvec(dpsi[1], dim, "dpsi[1]")};
        m.weight = weight;
        out.pure = std::move(m);
    }
    if (root.contains("mixed")) {
        const json& mixed = root["mixed"];
        if (!mixed.is_object()) throw ParseError("mixed: expected an object");
        MixedModel m;
        m.rho = parse_cmat(require_field(mixed, "rho", "mixed"), dim, "mixed.rho");
        const json& drho = require_field(mixed, "drho", "mixed");
        if (!drho.is_array() || drho.size() != 2) {
            throw ParseError("mixed.drho: expected exactly two derivative matrices");
        }
        m.drho = {parse_cmat(drho[0], dim, "mixed.drho[0]"),
                  parse_cmat(drho[1], dim, "mixed.drho[1]")};
        m.weight = weight;
        out.mixed = std::move(m);
    }
    if (!out.pure && !out.mixed) {
        throw ParseError("model file: needs psi0/dpsi, a mixed section, or both");
    }
    return out;
}

ModelFile parse_model_file(const std::string& path) {
    return parse_model_json(read_file(path));
}

namespace {

void append_cmat(std::string& s, const CMat& m) {
    s += "[";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        if (i) s += ",";
        s += "[";
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) s += ",";
            s += "[" + format_double(m(i, j).real()) + "," + format_double(m(i, j).imag()) +
                 "]";
        }
        s += "]";
    }
    s += "]";
}

} // namespace

std::string povm_to_json(const Povm& povm) {
    std::string s = "{\n  \"dim\": " + std::to_string(povm.dim()) + ",\n  \"elements\": [";
    for (std::size_t k = 0; k < povm.elements.size(); ++k) {
        if (k) s += ",";
        s += "\n    ";
        append_cmat(s, povm.elements[k]);
    }
    s += "\n  ],\n  \"labels\": [";
    for (std::size_t k = 0; k < povm.labels.size(); ++k) {
        if (k) s += ",";
        s += "\"" + povm.labels[k] + "\"";
    }
    s += "]\n}\n";
    return s;
}

void write_povm_file(const std::string& path, const Povm& povm) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open file for writing: " + path);
    out << povm_to_json(povm);
    if (!out) throw ParseError("failed to write: " + path);
}

Povm parse_povm_json(const std::string& text) {
    const json root = parse_json_text(text);
    if (!root.is_object()) throw ParseError("povm file: top level must be an object");
    const json& dim_node = require_field(root, "dim", "povm file");
    if (!dim_node.is_number_integer() || dim_node.get<long>() < 1) {
        throw ParseError("dim: expected a positive integer");
    }
    const auto dim = static_cast<Eigen::Index>(dim_node.get<long>());
    const json& elements = require_field(root, "elements", "povm file");
    if (!elements.is_array() || elements.empty()) {
        throw ParseError("elements: expected a nonempty array of matrices");
    }
    Povm povm;
    for (std::size_t k = 0; k < elements.size(); ++k) {
        povm.elements.push_back(
            parse_cmat(elements[k], dim, "elements[" + std::to_string(k) + "]"));
    }
    if (root.contains("labels")) {
        const json& labels = root["labels"];
        if (!labels.is_array()) throw ParseError("labels: expected an array of strings");
        for (const auto& l : labels) {
            if (!l.is_string()) throw ParseError("labels: expected an array of strings");
            povm.labels.push_back(l.get<std::string>());
        }
    }
    return povm;
}

Povm parse_povm_file(const std::string& path) {
    return parse_povm_json(read_file(path));
}

} // namespace qest::io
