// slogic :: zoodb
//
// Fact databases read from `.slt` files: ingestion with provenance, consistency
// checking, proved/refuted/independent queries, implication matrices, DOT
// export and persisted saturation reports.
//
// .slt format (line oriented, UTF-8):
//
//   # comment
//   vars RT22 SRT22 COH
//   SRT22 & COH => RT22 @ "Cholak, Jockusch, Slaman 2001"
//   COH =/> RT22

#ifndef SLOGIC_ZOODB_HPP_
#define SLOGIC_ZOODB_HPP_

#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "slogic/formula.hpp"
#include "slogic/fragments.hpp"
#include "slogic/semantics.hpp"
#include "slogic/tableau.hpp"

namespace slogic {

  inline constexpr const char* kEngineVersion = "slogic 0.1.0";

  enum class FragmentClass : std::uint8_t { F1, F2, General };
  const char* fragment_name(FragmentClass c) noexcept;

  struct SourceLine {
    std::string file;
    std::size_t line = 0;
    std::string render() const { return file + ":" + std::to_string(line); }
  };

  struct FactRecord {
    SFormula fact;
    std::optional<F2Fact> fragment;     // set when the fact is in F2
    std::optional<std::string> provenance;
    SourceLine source;
  };

  struct Diagnostic {
    enum class Severity : std::uint8_t { Error, Warning };
    Severity severity;
    SourceLine where;
    std::size_t column = 0;           // 1-based, 0 when not applicable
    std::string message;
    std::string render() const;
  };

  class Database {
  public:
    const std::vector<FactRecord>& records() const noexcept { return records_; }
    // Explicit `vars` declarations plus every variable used by a fact.
    const VarSet& declared_vars() const noexcept { return declared_; }
    FragmentClass fragment_class() const noexcept { return class_; }
    const Theory& theory() const noexcept { return theory_; }
    // Only meaningful when fragment_class() is F1 or F2.
    std::vector<F2Fact> fragment_facts() const;

    void add(FactRecord record);
    void declare(const VarName& v) { declared_.insert(v); }

    // Facts, provenance and variables; source positions are ignored.
    friend bool operator==(const Database& a, const Database& b);

  private:
    std::vector<FactRecord> records_;
    VarSet declared_;
    Theory theory_;
    FragmentClass class_ = FragmentClass::F1;
  };

  struct IngestResult {
    std::optional<Database> db;
    std::vector<Diagnostic> diagnostics;
    bool ok() const noexcept { return db.has_value(); }
  };

  IngestResult ingest(std::string_view text, const std::string& source_name = "<input>");
  std::string render_slt(const Database& db);

  // ---- Engines ----

  enum class Engine : std::uint8_t { Auto, Tableau, F1, F2, Oracle };
  const char* engine_name(Engine e) noexcept;
  std::optional<Engine> parse_engine(std::string_view s);

  class EngineError: public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
  };

  // Outcome of one consequence check, whichever engine ran it.
  struct EngineResult {
    VerdictKind kind;
    Engine engine;
    std::shared_ptr<const Tableau> tableau;
    std::optional<RuleTrace> trace;
    std::optional<Frame> countermodel;
  };

  // The engine Auto resolves to for this database and query.
  Engine route(const Database& db, const SFormula& query);
  // Throws EngineError when a forced engine cannot take the input.
  EngineResult run_engine(const Database& db, const SFormula& query, Engine engine = Engine::Auto);

  struct CheckResult {
    bool consistent = true;
    Engine engine = Engine::Auto;
    std::optional<Frame> model;
    std::optional<Conflict> conflict;               // fragment engines
    std::shared_ptr<const Tableau> refutation;      // tableau engine
  };

  CheckResult check(const Database& db, Engine engine = Engine::Auto);
  std::string render_conflict(const CheckResult& r);

  enum class AnswerKind : std::uint8_t { Proved, Refuted, Independent, Inconsistent };
  const char* answer_name(AnswerKind k) noexcept;

  struct QueryAnswer {
    AnswerKind kind;
    SFormula query;
    // Proved: the run on the query. Refuted: the run on its strict negation.
    std::optional<EngineResult> evidence;
    // Independent: a model of the database plus the query, and one plus its negation.
    std::optional<Frame> frame_for;
    std::optional<Frame> frame_against;
    std::optional<CheckResult> inconsistency;
  };

  QueryAnswer query(const Database& db, const SFormula& q, Engine engine = Engine::Auto);

  // ---- Matrix and DOT ----

  struct ImplicationMatrix {
    std::vector<VarName> vars;                       // sorted
    std::vector<std::vector<AnswerKind>> cells;      // cells[i][j]: vars[i] => vars[j]
    AnswerKind at(const VarName& a, const VarName& b) const;
  };

  // Requires a consistent database.
  ImplicationMatrix matrix(const Database& db, Engine engine = Engine::Auto);
  std::string render_matrix(const ImplicationMatrix& m);
  nlohmann::json matrix_to_json(const ImplicationMatrix& m);
  // Solid edges for proved implications (transitively reduced), dashed for refuted ones.
  std::string export_dot(const ImplicationMatrix& m);

  // ---- Saturation reports ----

  struct ClosureReport {
    std::string engine_version = kEngineVersion;
    std::string input_digest;       // SHA-256 of the fact file, hex
    std::size_t max_ante = 3;
    std::vector<DerivedFact> facts;
  };

  class ClosureError: public std::runtime_error {
  public:
    enum class Code { Stale, IOFailure, Malformed };
    ClosureError(Code code, const std::string& what): std::runtime_error(what), code_(code) {}
    Code code() const noexcept { return code_; }
  private:
    Code code_;
  };

  std::string sha256_hex(std::string_view data);

  // Requires an F1/F2 database; throws FragmentError otherwise.
  ClosureReport saturate_database(const Database& db, std::string_view source_text, std::size_t max_ante);
  nlohmann::json closure_to_json(const ClosureReport& r);
  ClosureReport closure_from_json(const nlohmann::json& j);
  std::string render_closure(const ClosureReport& r);

  void save_closure(const std::filesystem::path& path, const ClosureReport& r);
  // Throws ClosureError: Stale when `current_text` no longer matches the digest.
  ClosureReport load_closure(const std::filesystem::path& path, std::string_view current_text);

} // namespace slogic

#endif // SLOGIC_ZOODB_HPP_
