#include <gtest/gtest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int status = -1;
    std::string out;
};

// Runs fdbtool with the given arguments; standard error is discarded.
Run fdbtool(const std::string& args)
{
    const std::string cmd = std::string(FDBTOOL_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        return r;
    }
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        r.out.append(buf.data(), n);
    }
    const int status = pclose(pipe);
    r.status = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

nlohmann::json structured(const std::string& args)
{
    const auto r = fdbtool(args + " --format structured");
    EXPECT_EQ(r.status, 0) << args;
    return nlohmann::json::parse(r.out);
}

} // namespace

TEST(Cli, LadderDeltaHasThreeTerms)
{
    const auto r = fdbtool(R"~(delta --functor identity --tree "((_))")~");
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "δ[(u:(u:_))] ⊗ δ[_] + δ[(u:_)] ⊗ δ[(u:_)] + δ[_] ⊗ δ[(u:(u:_))]\n");
    EXPECT_EQ(structured(R"~(delta --functor identity --tree "((_))")~")["terms"].size(), 3u);
}

TEST(Cli, GreenOfConstantIsTwoTerms)
{
    const auto r = fdbtool("green --functor constant");
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "δ[(y)] + δ[_]\n");
}

TEST(Cli, VerifyFdbBinary)
{
    const auto doc = structured("verify fdb --functor binary --max-edges 9");
    EXPECT_EQ(doc["summary"]["failed"], 0);
    EXPECT_GT(doc["summary"]["checked"].get<int>(), 0);
    EXPECT_EQ(doc["schema_version"], 1);
    EXPECT_FALSE(doc.contains("elapsed_ms"));
}

TEST(Cli, TimingAddsElapsedField)
{
    const auto doc = structured("verify classical --max-degree 3 --timing");
    EXPECT_TRUE(doc.contains("elapsed_ms"));
}

TEST(Cli, EnumerateStructuredFields)
{
    const auto doc = structured("enumerate --functor binary --max-edges 5");
    ASSERT_EQ(doc["trees"].size(), 4u);
    for (const auto& t : doc["trees"]) {
        for (const char* field : {"key", "tree", "aut_order", "root", "leaf_profile", "edges", "nodes"}) {
            EXPECT_TRUE(t.contains(field)) << field;
        }
    }
    const auto filtered = structured(R"~(enumerate --functor exp --max-edges 4 --leaf-profile "v:2")~");
    for (const auto& t : filtered["trees"]) {
        EXPECT_EQ(t["leaf_profile"], "v:2");
    }
}

TEST(Cli, AutOrder)
{
    const auto r = fdbtool(R"~(aut --functor exp --tree "(e3:___)")~");
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "6\n");
}

TEST(Cli, DeterministicAcrossWorkerCounts)
{
    const auto a = fdbtool("verify fdb --functor exp --max-edges 6 --max-nodes 4 --format structured --jobs 1");
    const auto b = fdbtool("verify fdb --functor exp --max-edges 6 --max-nodes 4 --format structured --jobs 4");
    EXPECT_EQ(a.status, 0);
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, SpecFileSource)
{
    const std::string path = testing::TempDir() + "cli_spec.json";
    std::ofstream(path) << R"~({"name": "pair", "colours": ["v"], "ops": [{"name": "m", "out": "v", "in": ["v", "v"], "sym": [[1, 0]]}]})~";
    const auto doc = structured("enumerate --spec-file " + path + " --max-edges 7");
    EXPECT_EQ(doc["spec"], "pair");
    EXPECT_EQ(doc["trees"].size(), 5u); // 1, 1, 1, 2 classes with 1 to 4 leaves
}

TEST(Cli, GroupoidRoundTrip)
{
    const std::string path = testing::TempDir() + "cli_groupoid.json";
    EXPECT_EQ(fdbtool("groupoid --seed 5 --output " + path).status, 0);
    const auto doc = structured("groupoid --input " + path);
    EXPECT_TRUE(doc.contains("cardinality"));
    EXPECT_TRUE(doc.contains("components"));
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(fdbtool("").status, 2);
    EXPECT_EQ(fdbtool("enumerate --functor nosuch").status, 2);
    EXPECT_EQ(fdbtool("enumerate --functor exp --spec-file x.json").status, 2);
    EXPECT_EQ(fdbtool(R"~(delta --functor binary --tree "(b:_")~").status, 2);
    EXPECT_EQ(fdbtool("verify phi --functor exp").status, 2);
    EXPECT_EQ(fdbtool("enumerate --functor binary --format fancy").status, 2);
    EXPECT_EQ(fdbtool("--help").status, 0);
}
