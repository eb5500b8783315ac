#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "onto/isomorphism.hpp"
#include "onto/syntax.hpp"
#include "temp_dir.hpp"

// Drives the installed CLI binary end to end.

using test_support::TempDir;

namespace {

struct CliResult {
    int exit_code;
    std::string out;
    std::string err;
};

std::string read_all(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

CliResult run_cli(const TempDir& dir, const std::string& args) {
    auto out_path = dir / "cli-stdout";
    auto err_path = dir / "cli-stderr";
    std::ostringstream cmd;
    cmd << "'" << ONTOSERVE_CLI_PATH << "'"
        << " --store-root '" << (dir / "store").string() << "'"
        << " --archive-root '" << (dir / "archive").string() << "'"
        << " --base-iri http://ont.library.sh.cn " << args << " > '" << out_path.string()
        << "' 2> '" << err_path.string() << "'";
    int status = std::system(cmd.str().c_str());
    CliResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = read_all(out_path);
    result.err = read_all(err_path);
    return result;
}

CliResult register_schema(const TempDir& dir, const char* file, const char* version,
                          const char* issued) {
    return run_cli(dir, std::string("register '") + test_support::fixture_path(file) +
                            "' --prefix schema --version " + version + " --issued '" + issued +
                            "' --title 'Schema.org vocabulary (schema)'");
}

}  // namespace

TEST_CASE("register, list, dump and parse back") {
    TempDir dir;
    auto reg = register_schema(dir, "schema_3.1.ttl", "3.1", "2016-08-09 00:00:00");
    CHECK(reg.exit_code == 0);
    auto reg2 = register_schema(dir, "schema_12.0.ttl", "12.0", "2021-03-08 00:00:00");
    CHECK(reg2.exit_code == 0);

    auto listing = run_cli(dir, "list");
    CHECK(listing.exit_code == 0);
    CHECK(listing.out.find("schema") != std::string::npos);
    CHECK(listing.out.find("12.0") != std::string::npos);

    auto dump = run_cli(dir, "dump schema --format nt");
    CHECK(dump.exit_code == 0);
    onto::Graph parsed = onto::parse(dump.out, onto::SyntaxFormat::ntriples);
    onto::Graph expected = onto::parse(test_support::read_fixture("schema_12.0.ttl"),
                                       onto::SyntaxFormat::turtle);
    CHECK(onto::graph_equal_ground(parsed, expected));

    auto versions = run_cli(dir, "versions schema");
    CHECK(versions.exit_code == 0);
    CHECK(versions.out.find("[latest]") != std::string::npos);
    CHECK(versions.out.find("3.1") != std::string::npos);
}

TEST_CASE("unknown prefix exits with the unknown-prefix code") {
    TempDir dir;
    auto result = run_cli(dir, "dump nosuch --format ttl");
    CHECK(result.exit_code == 11);
    CHECK(result.err.find("unknown-prefix") != std::string::npos);
    CHECK(result.out.empty());
}

TEST_CASE("syntax errors carry position and a distinct exit code") {
    TempDir dir;
    auto bad_file = dir / "bad.ttl";
    {
        std::ofstream out(bad_file);
        out << "@prefix ex: <http://e.org/> .\nex:s ex:p {{{ .\n";
    }
    auto result = run_cli(dir, "register '" + bad_file.string() +
                                   "' --prefix bad --version 1 --issued 2020-01-01");
    CHECK(result.exit_code == 4);
    CHECK(result.err.find("syntax-error") != std::string::npos);
    CHECK(result.err.find("line 2") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
    TempDir dir;
    auto result = run_cli(dir, "dump");  // missing required prefix argument
    CHECK(result.exit_code == 2);
}

TEST_CASE("tree, search, diff and rollback round out the surface") {
    TempDir dir;
    auto reg = run_cli(dir, "register '" + test_support::fixture_path("shlnames.ttl") +
                                "' --prefix shlnames --version 1.0 --issued 2021-01-01");
    REQUIRE(reg.exit_code == 0);

    auto tree = run_cli(dir, "tree shlnames");
    CHECK(tree.exit_code == 0);
    CHECK(tree.out.find("http://ont.library.sh.cn/ns/shl#Person") != std::string::npos);

    auto search = run_cli(dir, "search 朋友 --facet label");
    CHECK(search.exit_code == 0);
    CHECK(search.out.find("friendOf") != std::string::npos);

    REQUIRE(register_schema(dir, "schema_3.1.ttl", "3.1", "2016-08-09 00:00:00").exit_code == 0);
    REQUIRE(register_schema(dir, "schema_12.0.ttl", "12.0", "2021-03-08 00:00:00").exit_code ==
            0);

    auto diff = run_cli(dir, "diff schema 3.1 12.0");
    CHECK(diff.exit_code == 0);
    CHECK(diff.out.find("+ ") != std::string::npos);
    CHECK(diff.out.find("organizer") != std::string::npos);
    CHECK(diff.out.find("- ") != std::string::npos);
    CHECK(diff.out.find("deathDate") != std::string::npos);

    auto rollback = run_cli(dir, "rollback schema 3.1");
    CHECK(rollback.exit_code == 0);
    auto dump = run_cli(dir, "dump schema --format ttl");
    onto::Graph now = onto::parse(dump.out, onto::SyntaxFormat::turtle);
    onto::Graph v31 = onto::parse(test_support::read_fixture("schema_3.1.ttl"),
                                  onto::SyntaxFormat::turtle);
    CHECK(onto::graph_equal_ground(now, v31));

    auto again = run_cli(dir, "rollback schema 3.1");
    CHECK(again.exit_code == 13);  // version-already-latest
}

TEST_CASE("offline stats against the registry's own store") {
    TempDir dir;
    REQUIRE(run_cli(dir, "register '" + test_support::fixture_path("cbdb.ttl") +
                             "' --prefix cbdb --version 1.0 --issued 2020-05-01")
                .exit_code == 0);
    // The ontology graph itself is a target graph in offline mode.
    auto stats = run_cli(dir,
                         "stats --endpoint local: --graph http://ont.library.sh.cn/graph/cbdb");
    CHECK(stats.exit_code == 0);
    CHECK(stats.out.find("property") != std::string::npos);
    CHECK(stats.out.find("http://www.w3.org/1999/02/22-rdf-syntax-ns#type") !=
          std::string::npos);
}
