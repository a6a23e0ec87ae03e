#pragma once

#include <fstream>
#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "lattice.hpp"

namespace lexlaurent {

// Flag description: {"n": <rank>, "sublattices": {"<k>": [[row-major]]}}.
// Omitted levels default to the identity, so {} with an "n" is the normal
// flag. Variable order in the file is the flag-adapted order; lex always
// compares the last variable first.
inline FlagOfLattices flag_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer())
        throw argument_error("flag file: expected an object with an integer \"n\"");
    const int n = j["n"].get<int>();
    std::map<int, IntMatrix> bases;
    if (j.contains("sublattices")) {
        if (!j["sublattices"].is_object()) throw argument_error("flag file: \"sublattices\" must be an object");
        for (const auto& [key, rows] : j["sublattices"].items()) {
            int k = 0;
            try {
                k = std::stoi(key);
            } catch (const std::exception&) {
                throw argument_error("flag file: sublattice key \"" + key + "\" is not a level");
            }
            if (!rows.is_array() || static_cast<int>(rows.size()) != k)
                throw argument_error("flag file: level " + key + " needs " + key + " rows");
            IntMatrix b(k, k);
            for (int r = 0; r < k; ++r) {
                const auto& row = rows[static_cast<std::size_t>(r)];
                if (!row.is_array() || static_cast<int>(row.size()) != k)
                    throw argument_error("flag file: level " + key + " rows need " + key + " entries");
                for (int c = 0; c < k; ++c) {
                    const auto& v = row[static_cast<std::size_t>(c)];
                    if (!v.is_number_integer()) throw argument_error("flag file: matrix entries must be integers");
                    b.at(r, c) = Int(v.get<long>());
                }
            }
            bases.emplace(k, std::move(b));
        }
    }
    return FlagOfLattices(n, std::move(bases));
}

inline FlagOfLattices load_flag_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw argument_error("cannot open flag file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw argument_error("flag file " + path + ": " + e.what());
    }
    return flag_from_json(j);
}

} // namespace lexlaurent
