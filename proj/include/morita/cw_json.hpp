#pragma once

#include <cstddef>
#include <string>

#include <json.hpp>

#include "morita/cw_model.hpp"
#include "morita/error.hpp"

namespace morita {

namespace detail {

inline std::string line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

} // namespace detail

/// Reads a CW complex document
/// {"name", "field", "cells": [{"id", "dim", "attach_word"?, "attach_cycle"?}]}
/// and checks it by building the cellular model.
inline CWComplex parse_cw_file(const std::string& text) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::parse_error, "malformed JSON at " + detail::line_column(text, e.byte ? e.byte - 1 : 0));
    }
    auto fail = [](const std::string& where, const std::string& what) -> void {
        throw Error(ErrorKind::parse_error, where + ": " + what);
    };
    if (!doc.is_object())
        fail("document", "expected an object");
    CWComplex x;
    if (doc.contains("name")) {
        if (!doc["name"].is_string())
            fail("name", "expected a string");
        x.name = doc["name"].get<std::string>();
    }
    if (!doc.contains("field") || !doc["field"].is_string())
        fail("field", "expected \"q\" or \"fp:<prime>\"");
    x.field = Field::parse(doc["field"].get<std::string>());
    if (!doc.contains("cells") || !doc["cells"].is_array())
        fail("cells", "expected an array");
    for (const auto& [key, value] : doc.items())
        if (key != "name" && key != "field" && key != "cells")
            fail(key, "unknown field");
    std::size_t i = 0;
    for (const auto& c : doc["cells"]) {
        const std::string where = "cells[" + std::to_string(i++) + "]";
        if (!c.is_object())
            fail(where, "expected an object");
        for (const auto& [key, value] : c.items())
            if (key != "id" && key != "dim" && key != "attach_word" && key != "attach_cycle")
                fail(where + "." + key, "unknown field");
        if (!c.contains("id") || !c["id"].is_string())
            fail(where + ".id", "expected a string");
        if (!c.contains("dim") || !c["dim"].is_number_integer())
            fail(where + ".dim", "expected an integer");
        Cell cell{c["id"].get<std::string>(), c["dim"].get<int>(), std::nullopt};
        const bool has_word = c.contains("attach_word"), has_cycle = c.contains("attach_cycle");
        if (has_word && has_cycle)
            fail(where, "attach_word and attach_cycle are exclusive");
        if (has_word) {
            if (cell.dim != 2)
                fail(where + ".attach_word", "only 2-cells take an attaching word");
            if (!c["attach_word"].is_string())
                fail(where + ".attach_word", "expected a string");
            cell.attach = c["attach_word"].get<std::string>();
        }
        if (has_cycle) {
            if (cell.dim < 3)
                fail(where + ".attach_cycle", "only cells of dimension >= 3 take an attaching cycle");
            if (!c["attach_cycle"].is_string())
                fail(where + ".attach_cycle", "expected a string");
            cell.attach = c["attach_cycle"].get<std::string>();
        }
        x.cells.push_back(std::move(cell));
    }
    x.validate();
    cellular_model(x);
    return x;
}

} // namespace morita
