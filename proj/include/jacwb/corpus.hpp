#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "jacwb/loci.hpp"
#include "jacwb/presentation_file.hpp"

namespace jacwb {

enum class CheckStatus { pass, fail, skipped_uncertified };

inline const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped_uncertified: return "skipped-uncertified";
  }
  return "";
}

struct CheckRecord {
  std::string case_id;
  std::string operation;
  std::string inputs_digest;
  std::string result;
  std::optional<std::string> expected;
  CheckStatus status = CheckStatus::fail;
  bool budget_exceeded = false;
};

struct CaseReport {
  std::string id;
  std::vector<CheckRecord> records;
  double seconds = 0;
};

/// 64-bit FNV-1a, printed as 16 hex digits.
inline std::string fnv1a_digest(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = hex[h & 0xf];
  return out;
}

namespace detail {

inline std::string bool_string(bool b) { return b ? "true" : "false"; }

/// Runs one check, turning library errors into failed or skipped records.
template <class F>
CheckRecord run_check(const std::string& id, const std::string& canonical, const std::string& op, F&& body) {
  CheckRecord rec;
  rec.case_id = id;
  rec.operation = op;
  rec.inputs_digest = fnv1a_digest(canonical + "\n" + op);
  try {
    body(rec);
  } catch (const BudgetExceeded& e) {
    rec.status = CheckStatus::fail;
    rec.budget_exceeded = true;
    rec.result = std::string("budget exceeded: ") + e.what();
  } catch (const UncertifiedDecomposition& e) {
    rec.status = CheckStatus::skipped_uncertified;
    rec.result = e.what();
  } catch (const LocusUnavailable& e) {
    rec.status = CheckStatus::skipped_uncertified;
    rec.result = e.what();
  } catch (const std::exception& e) {
    rec.status = CheckStatus::fail;
    rec.result = std::string("error: ") + e.what();
  }
  return rec;
}

inline void compare(CheckRecord& rec, const std::string& result, const std::string& expected, bool equal) {
  rec.result = result;
  rec.expected = expected;
  rec.status = equal ? CheckStatus::pass : CheckStatus::fail;
}

}  // namespace detail

/// Executes every expectation declared in one presentation file.
inline CaseReport run_case(const std::string& id, const std::string& text,
                           MonomialOrder order = MonomialOrder::degrevlex()) {
  auto start = std::chrono::steady_clock::now();
  CaseReport report;
  report.id = id;
  PresentationFile file;
  try {
    file = parse_presentation(text, order);
  } catch (const std::exception& e) {
    CheckRecord rec;
    rec.case_id = id;
    rec.operation = "parse";
    rec.inputs_digest = fnv1a_digest(text);
    rec.result = e.what();
    report.records.push_back(rec);
    return report;
  }
  const std::string canonical = serialize_presentation(file);
  const auto& e = file.expect;
  std::optional<Presentation> pres;
  auto presentation = [&]() -> const Presentation& {
    if (!pres) pres = file.presentation();
    return *pres;
  };
  auto add = [&](const std::string& op, auto&& body) {
    report.records.push_back(detail::run_check(id, canonical, op, body));
  };

  if (e.dim)
    add("dim", [&](CheckRecord& r) {
      int d = presentation().dim();
      detail::compare(r, std::to_string(d), std::to_string(*e.dim), d == *e.dim);
    });
  if (e.minprimes)
    add("minprimes", [&](CheckRecord& r) {
      auto mp = minimal_primes(presentation().relations());
      if (!mp.certified) throw UncertifiedDecomposition("minimal primes are not certified");
      std::string got, want;
      for (const auto& p : mp.primes) got += (got.empty() ? "" : ", ") + p.canonical_string();
      for (const auto& p : *e.minprimes) want += (want.empty() ? "" : ", ") + p.to_string();
      bool equal = mp.primes.size() == e.minprimes->size() &&
                   std::all_of(e.minprimes->begin(), e.minprimes->end(), [&](const Ideal& q) {
                     return std::any_of(mp.primes.begin(), mp.primes.end(), [&](const Ideal& p) { return p.equals(q); });
                   });
      detail::compare(r, got, want, equal);
    });
  if (e.edd)
    add("edd", [&](CheckRecord& r) {
      int v = edd(presentation()).edd;
      detail::compare(r, std::to_string(v), std::to_string(*e.edd), v == *e.edd);
    });
  if (e.sing)
    add("sing", [&](CheckRecord& r) {
      auto locus = singular_locus(presentation(), e.sing);
      if (locus.provenance == LocusReport::Provenance::corpus_supplied) {
        r.status = CheckStatus::skipped_uncertified;
        r.result = "corpus-supplied locus cannot be recomputed: " + locus.notes.front();
        r.expected = e.sing->to_string();
        return;
      }
      // loci are sets: compare up to radical
      detail::compare(r, locus.sing->canonical_string(), e.sing->to_string(), same_radical(*locus.sing, *e.sing));
    });
  for (const auto& [n, want] : e.jn)
    add("jn(" + std::to_string(n) + ")", [&](CheckRecord& r) {
      Ideal got = jn_ideal(presentation(), n).value_in_s;
      Ideal expected = sum(want, presentation().relations());
      detail::compare(r, got.canonical_string(), want.to_string(), got.equals(expected));
    });
  for (const auto& [n, want] : e.cond_ii)
    add("cond_ii(" + std::to_string(n) + ")", [&](CheckRecord& r) {
      auto rep = check_conditions(presentation(), n, singular_locus(presentation(), e.sing));
      bool got = rep.checks.at("cond_ii_" + std::to_string(n));
      detail::compare(r, detail::bool_string(got), detail::bool_string(want), got == want);
    });
  for (const auto& [n, want] : e.cond_iii)
    add("cond_iii(" + std::to_string(n) + ")", [&](CheckRecord& r) {
      bool got = variety_contains(presentation().relations(), jn_ideal(presentation(), n + 1).value_in_s);
      detail::compare(r, detail::bool_string(got), detail::bool_string(want), got == want);
    });
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

inline constexpr const char* kPresentationExtension = ".pres";

/// Case files of a corpus directory, sorted by name.
inline std::vector<std::filesystem::path> corpus_files(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw PreconditionFailed("not a directory: " + dir.string());
  std::vector<std::filesystem::path> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == kPresentationExtension) out.push_back(entry.path());
  std::sort(out.begin(), out.end());
  return out;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionFailed("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Runs every case with up to `jobs` worker threads; reports keep file order.
inline std::vector<CaseReport> run_corpus(const std::filesystem::path& dir, unsigned jobs,
                                          MonomialOrder order = MonomialOrder::degrevlex()) {
  auto files = corpus_files(dir);
  std::vector<CaseReport> reports(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < files.size();) {
      std::string id = files[i].stem().string();
      std::string text;  // an unreadable file fails at parse
      try {
        text = read_file(files[i]);
      } catch (const std::exception&) {
      }
      reports[i] = run_case(id, text, order);
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(files.size(), 1))));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return reports;
}

struct CorpusSummary {
  std::size_t pass = 0, fail = 0, skipped = 0;
  bool budget_exceeded = false;
};

inline CorpusSummary summarize(const std::vector<CaseReport>& reports) {
  CorpusSummary s;
  for (const auto& c : reports)
    for (const auto& r : c.records) {
      if (r.status == CheckStatus::pass) ++s.pass;
      if (r.status == CheckStatus::fail) ++s.fail;
      if (r.status == CheckStatus::skipped_uncertified) ++s.skipped;
      s.budget_exceeded |= r.budget_exceeded;
    }
  return s;
}

inline nlohmann::ordered_json record_json(const CheckRecord& r) {
  nlohmann::ordered_json j;
  j["case"] = r.case_id;
  j["operation"] = r.operation;
  j["inputs_digest"] = r.inputs_digest;
  j["result"] = r.result;
  j["expected"] = r.expected ? nlohmann::ordered_json(*r.expected) : nlohmann::ordered_json(nullptr);
  j["status"] = status_name(r.status);
  return j;
}

/// Deterministic report; wall-clock timings only appear under "timing" when requested.
inline nlohmann::ordered_json corpus_json(const std::vector<CaseReport>& reports, bool with_timing) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  auto& records = j["records"] = nlohmann::ordered_json::array();
  for (const auto& c : reports)
    for (const auto& r : c.records) records.push_back(record_json(r));
  auto s = summarize(reports);
  j["summary"] = {{"cases", reports.size()}, {"pass", s.pass}, {"fail", s.fail}, {"skipped-uncertified", s.skipped}};
  if (with_timing) {
    nlohmann::ordered_json t;
    for (const auto& c : reports) t[c.id] = c.seconds;
    j["timing"] = t;
  }
  return j;
}

}  // namespace jacwb
