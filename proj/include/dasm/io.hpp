#pragma once

// JSON instance / matching formats and instance validation.

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dasm/core.hpp"

namespace dasm {

using json = nlohmann::json;

// Structurally parsed market description, prior to model validation.
// Mirrors the file format: everything is keyed by agent name.
struct RawInstance {
  std::vector<std::string> applicants;
  std::vector<std::string> employers;
  std::map<std::string, std::vector<std::string>> affiliation;
  std::map<std::string, std::int64_t> quota;
  // applicant -> employer -> 0/1
  std::map<std::string, std::map<std::string, int>> pref_applicant;
  // employer -> applicant -> 0/1
  std::map<std::string, std::map<std::string, int>> pref_employer_own;
  // employer -> affiliate -> employer -> 0/1
  std::map<std::string, std::map<std::string, std::map<std::string, int>>>
      pref_employer_affiliate;
  json meta;  // opaque; preserved through round-trips
};

// Enforces every Instance invariant: disjoint affiliation cover, complete
// preference tables, nonnegative quotas, known agent references. Input agent
// order is preserved.
inline Instance validate_instance(const RawInstance& raw) {
  Instance inst;
  inst.n = static_cast<int>(raw.applicants.size());
  inst.m = static_cast<int>(raw.employers.size());
  inst.applicant_names = raw.applicants;
  inst.employer_names = raw.employers;

  std::map<std::string, int> a_index, e_index;
  for (int i = 0; i < inst.n; ++i) {
    if (!a_index.emplace(raw.applicants[i], i).second)
      throw DuplicateAgentName("duplicate applicant name: " +
                               raw.applicants[i]);
  }
  for (int j = 0; j < inst.m; ++j) {
    if (a_index.count(raw.employers[j]) ||
        !e_index.emplace(raw.employers[j], j).second)
      throw DuplicateAgentName("duplicate agent name: " + raw.employers[j]);
  }

  auto applicant_at = [&](const std::string& name) {
    auto it = a_index.find(name);
    if (it == a_index.end())
      throw UnknownAgentReference("unknown applicant: " + name);
    return it->second;
  };
  auto employer_at = [&](const std::string& name) {
    auto it = e_index.find(name);
    if (it == e_index.end())
      throw UnknownAgentReference("unknown employer: " + name);
    return it->second;
  };

  // Affiliation must form a disjoint cover of the applicant set.
  inst.aff.assign(inst.m, {});
  inst.owner.assign(inst.n, -1);
  for (const auto& [e_name, members] : raw.affiliation) {
    int e = employer_at(e_name);
    for (const auto& a_name : members) {
      int a = applicant_at(a_name);
      if (inst.owner[a] != -1)
        throw DisjointCoverViolation("applicant in two affiliation sets: " +
                                     a_name);
      inst.owner[a] = e;
      inst.aff[e].push_back(a);
    }
  }
  for (int a = 0; a < inst.n; ++a)
    if (inst.owner[a] == -1)
      throw DisjointCoverViolation("applicant outside the affiliation cover: " +
                                   raw.applicants[a]);
  for (auto& members : inst.aff) std::sort(members.begin(), members.end());

  inst.quota_applicant.assign(inst.n, 0);
  inst.quota_employer.assign(inst.m, 0);
  for (const auto& [name, q] : raw.quota) {
    if (q < 0) throw NegativeQuota("negative quota for " + name);
    auto a_it = a_index.find(name);
    if (a_it != a_index.end()) {
      inst.quota_applicant[a_it->second] = static_cast<int>(q);
      continue;
    }
    auto e_it = e_index.find(name);
    if (e_it == e_index.end())
      throw UnknownAgentReference("quota for unknown agent: " + name);
    inst.quota_employer[e_it->second] = static_cast<int>(q);
  }
  for (const auto& name : raw.applicants)
    if (!raw.quota.count(name))
      throw IncompletePreferences("missing quota for " + name);
  for (const auto& name : raw.employers)
    if (!raw.quota.count(name))
      throw IncompletePreferences("missing quota for " + name);

  auto read_bit = [](int v, const std::string& where) {
    if (v != 0 && v != 1)
      throw IncompletePreferences("non-binary preference at " + where);
    return static_cast<std::uint8_t>(v);
  };

  inst.pref_applicant.assign(static_cast<std::size_t>(inst.n) * inst.m, 0);
  for (int a = 0; a < inst.n; ++a) {
    auto row_it = raw.pref_applicant.find(raw.applicants[a]);
    if (row_it == raw.pref_applicant.end())
      throw IncompletePreferences("missing applicant preference row for " +
                                  raw.applicants[a]);
    for (int e = 0; e < inst.m; ++e) {
      auto cell = row_it->second.find(raw.employers[e]);
      if (cell == row_it->second.end())
        throw IncompletePreferences("missing pr_" + raw.applicants[a] + "(" +
                                    raw.employers[e] + ")");
      inst.pref_applicant[a * inst.m + e] =
          read_bit(cell->second, raw.applicants[a]);
    }
    for (const auto& [e_name, _] : row_it->second) employer_at(e_name);
  }

  inst.pref_employer_own.assign(static_cast<std::size_t>(inst.m) * inst.n, 0);
  for (int e = 0; e < inst.m; ++e) {
    auto row_it = raw.pref_employer_own.find(raw.employers[e]);
    if (row_it == raw.pref_employer_own.end())
      throw IncompletePreferences("missing employer preference row for " +
                                  raw.employers[e]);
    for (int a = 0; a < inst.n; ++a) {
      auto cell = row_it->second.find(raw.applicants[a]);
      if (cell == row_it->second.end())
        throw IncompletePreferences("missing pr_" + raw.employers[e] + "(" +
                                    raw.applicants[a] + ")");
      inst.pref_employer_own[e * inst.n + a] =
          read_bit(cell->second, raw.employers[e]);
    }
    for (const auto& [a_name, _] : row_it->second) applicant_at(a_name);
  }

  // Affiliate tables exist exactly for pairs (e, a in aff(e)) and are
  // complete over all employers.
  inst.pref_employer_affiliate.assign(
      static_cast<std::size_t>(inst.n) * inst.m, 0);
  for (const auto& [e_name, rows] : raw.pref_employer_affiliate) {
    int e = employer_at(e_name);
    for (const auto& [a_name, row] : rows) {
      int a = applicant_at(a_name);
      if (inst.owner[a] != e)
        throw UnknownAgentReference("affiliate preference for non-affiliate " +
                                    a_name + " of " + e_name);
      for (int e2 = 0; e2 < inst.m; ++e2) {
        auto cell = row.find(raw.employers[e2]);
        if (cell == row.end())
          throw IncompletePreferences("missing pr_" + e_name + "^" + a_name +
                                      "(" + raw.employers[e2] + ")");
        inst.pref_employer_affiliate[a * inst.m + e2] =
            read_bit(cell->second, a_name);
      }
    }
  }
  for (int a = 0; a < inst.n; ++a) {
    const std::string& e_name = raw.employers[inst.owner[a]];
    auto rows = raw.pref_employer_affiliate.find(e_name);
    if (rows == raw.pref_employer_affiliate.end() ||
        !rows->second.count(raw.applicants[a]))
      throw IncompletePreferences("missing affiliate preference row pr_" +
                                  e_name + "^" + raw.applicants[a]);
  }

  return inst;
}

inline RawInstance raw_from_json(const json& doc) {
  RawInstance raw;
  try {
    raw.applicants = doc.at("applicants").get<std::vector<std::string>>();
    raw.employers = doc.at("employers").get<std::vector<std::string>>();
    for (const auto& [e_name, members] : doc.at("affiliation").items())
      raw.affiliation[e_name] = members.get<std::vector<std::string>>();
    for (const auto& [name, q] : doc.at("quota").items())
      raw.quota[name] = q.get<std::int64_t>();
    for (const auto& [a_name, row] : doc.at("pref_applicant").items())
      for (const auto& [e_name, v] : row.items())
        raw.pref_applicant[a_name][e_name] = v.get<int>();
    for (const auto& [e_name, row] : doc.at("pref_employer_own").items())
      for (const auto& [a_name, v] : row.items())
        raw.pref_employer_own[e_name][a_name] = v.get<int>();
    for (const auto& [e_name, rows] : doc.at("pref_employer_affiliate").items())
      for (const auto& [a_name, row] : rows.items())
        for (const auto& [e2_name, v] : row.items())
          raw.pref_employer_affiliate[e_name][a_name][e2_name] = v.get<int>();
    if (doc.contains("meta")) raw.meta = doc.at("meta");
  } catch (const json::exception& ex) {
    throw IoFailure(std::string("malformed instance document: ") + ex.what());
  }
  return raw;
}

inline json instance_to_json(const Instance& inst,
                             const json& meta = json()) {
  json doc;
  doc["applicants"] = inst.applicant_names;
  doc["employers"] = inst.employer_names;
  json affiliation = json::object();
  for (int e = 0; e < inst.m; ++e) {
    json members = json::array();
    for (int a : inst.aff[e]) members.push_back(inst.applicant_names[a]);
    affiliation[inst.employer_names[e]] = std::move(members);
  }
  doc["affiliation"] = std::move(affiliation);
  json quota = json::object();
  for (int a = 0; a < inst.n; ++a)
    quota[inst.applicant_names[a]] = inst.quota_applicant[a];
  for (int e = 0; e < inst.m; ++e)
    quota[inst.employer_names[e]] = inst.quota_employer[e];
  doc["quota"] = std::move(quota);

  json pa = json::object();
  for (int a = 0; a < inst.n; ++a) {
    json row = json::object();
    for (int e = 0; e < inst.m; ++e)
      row[inst.employer_names[e]] = inst.pr_a(a, e);
    pa[inst.applicant_names[a]] = std::move(row);
  }
  doc["pref_applicant"] = std::move(pa);

  json po = json::object();
  for (int e = 0; e < inst.m; ++e) {
    json row = json::object();
    for (int a = 0; a < inst.n; ++a)
      row[inst.applicant_names[a]] = inst.pr_e_own(e, a);
    po[inst.employer_names[e]] = std::move(row);
  }
  doc["pref_employer_own"] = std::move(po);

  json pf = json::object();
  for (int e = 0; e < inst.m; ++e) {
    json rows = json::object();
    for (int a : inst.aff[e]) {
      json row = json::object();
      for (int e2 = 0; e2 < inst.m; ++e2)
        row[inst.employer_names[e2]] = inst.pr_e_aff(a, e2);
      rows[inst.applicant_names[a]] = std::move(row);
    }
    pf[inst.employer_names[e]] = std::move(rows);
  }
  doc["pref_employer_affiliate"] = std::move(pf);

  if (!meta.is_null()) doc["meta"] = meta;
  return doc;
}

inline Instance instance_from_json(const json& doc) {
  return validate_instance(raw_from_json(doc));
}

inline std::string serialize_instance(const Instance& inst,
                                      const json& meta = json()) {
  return instance_to_json(inst, meta).dump(2) + "\n";
}

inline Instance parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& ex) {
    throw IoFailure(std::string("instance is not valid JSON: ") + ex.what());
  }
  return instance_from_json(doc);
}

inline json matching_to_json(const Instance& inst, const Matching& mu) {
  json matches = json::array();
  for (auto [a, e] : mu.pairs())
    matches.push_back(
        json::array({inst.applicant_names[a], inst.employer_names[e]}));
  return json{{"matches", std::move(matches)}};
}

inline Matching matching_from_json(const Instance& inst, const json& doc) {
  std::map<std::string, int> a_index, e_index;
  for (int a = 0; a < inst.n; ++a) a_index[inst.applicant_names[a]] = a;
  for (int e = 0; e < inst.m; ++e) e_index[inst.employer_names[e]] = e;
  std::vector<std::pair<int, int>> pairs;
  try {
    for (const auto& entry : doc.at("matches")) {
      auto a_it = a_index.find(entry.at(0).get<std::string>());
      auto e_it = e_index.find(entry.at(1).get<std::string>());
      if (a_it == a_index.end() || e_it == e_index.end())
        throw IoFailure("matching references unknown agent");
      pairs.emplace_back(a_it->second, e_it->second);
    }
  } catch (const json::exception& ex) {
    throw IoFailure(std::string("malformed matching document: ") + ex.what());
  }
  return Matching::from_pairs(inst.n, inst.m, pairs);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoFailure("cannot open " + path + " for writing");
  out << content;
  if (!out) throw IoFailure("write failed: " + path);
}

inline std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string instance_digest(const Instance& inst) {
  std::uint64_t h = fnv1a64(serialize_instance(inst));
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace dasm
