// End-to-end checks of the installed command surface: exit codes, file
// outputs, determinism. Drives the real binary via std::system.

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "narrative/corpus.hpp"
#include "narrative/io.hpp"

using namespace narrative;
namespace fs = std::filesystem;

namespace {

const std::string kCli = NARRATIVE_CLI_PATH;
const fs::path kData = NARRATIVE_DATA_DIR;

fs::path work_dir() {
    const fs::path dir = fs::temp_directory_path() / "narrative_cli_tests";
    fs::create_directories(dir);
    return dir;
}

int run(const std::string& args) {
    const std::string cmd = kCli + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    if (WIFEXITED(status)) return WEXITSTATUS(status);
    return -1;
}

std::size_t count_lines(const fs::path& path) {
    std::ifstream in(path);
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        if (!line.empty()) ++n;
    }
    return n;
}

std::string common_flags() {
    return " --lexicon " + (kData / "vad_lexicon.csv").string() + " --stop-list " +
           (kData / "stopwords.txt").string();
}

}  // namespace

TEST_CASE("score on the bundled story produces the expected row count") {
    const fs::path out = work_dir() / "score_out";
    fs::remove_all(out);

    const std::string story = (kData / "sample_story.txt").string();
    REQUIRE(run("score " + story + common_flags() + " --window 500 --out " + out.string() +
                " --format both") == 0);

    // Row count equals the number of full 500-word windows in the text.
    const auto words = corpus::tokenize(io::read_file(story), "story");
    const std::size_t expected = words.words.size() / 500;
    CHECK(count_lines(out / "sample_story.csv") == expected + 1);  // header included
    CHECK(fs::exists(out / "sample_story.json"));
}

TEST_CASE("score exit codes") {
    const fs::path out = work_dir() / "score_err";
    SUBCASE("missing lexicon file is exit 2") {
        CHECK(run("score " + (kData / "sample_story.txt").string() +
                  " --lexicon /nonexistent/lex.csv --out " + out.string()) == 2);
    }
    SUBCASE("no documents is exit 1") {
        CHECK(run("score" + common_flags() + " --out " + out.string()) == 1);
    }
    SUBCASE("missing input file is exit 2") {
        CHECK(run("score /nonexistent/story.txt" + common_flags() + " --out " + out.string()) ==
              2);
    }
    SUBCASE("document shorter than one window warns but exits 0 when others succeed") {
        const fs::path tiny = work_dir() / "tiny.txt";
        std::ofstream(tiny) << "just a few words here\n";
        CHECK(run("score " + tiny.string() + " " + (kData / "sample_story.txt").string() +
                  common_flags() + " --out " + out.string()) == 0);
        CHECK_FALSE(fs::exists(out / "tiny.csv"));
    }
}

TEST_CASE("score accepts the raw VAD lexicon layout via --lexicon-format") {
    const fs::path dir = work_dir() / "nrc";
    fs::remove_all(dir);
    fs::create_directories(dir);

    const fs::path lex = dir / "nrc.tsv";
    std::ofstream(lex) << "word\tvalence\tarousal\tdominance\n"
                       << "calm\t0.772\t0.148\t0.546\n"
                       << "storm\t0.300\t0.810\t0.420\n"
                       << "river\t0.600\t0.400\t0.500\n";

    const fs::path text = dir / "doc.txt";
    {
        std::ofstream out(text);
        for (int i = 0; i < 30; ++i) out << "calm storm river calm storm ";
    }

    CHECK(run("score " + text.string() + " --lexicon " + lex.string() +
              " --lexicon-format nrc --window 50 --out " + (dir / "out").string()) == 0);
    CHECK(fs::exists(dir / "out" / "doc.csv"));
    // Default layout parsing of the same file must fail (usage error).
    CHECK(run("score " + text.string() + " --lexicon " + lex.string() + " --window 50 --out " +
              (dir / "out2").string()) == 1);
}

TEST_CASE("plot is deterministic byte for byte") {
    const fs::path out = work_dir() / "plot_out";
    fs::remove_all(out);
    fs::create_directories(out);

    REQUIRE(run("score " + (kData / "sample_story.txt").string() + common_flags() +
                " --out " + out.string()) == 0);

    const std::string arc = (out / "sample_story.csv").string();
    REQUIRE(run("plot --in " + arc + " --out-file " + (out / "a.svg").string()) == 0);
    REQUIRE(run("plot --in " + arc + " --out-file " + (out / "b.svg").string()) == 0);
    CHECK(io::read_file(out / "a.svg") == io::read_file(out / "b.svg"));
}

TEST_CASE("plot of an empty arc fails without writing") {
    const fs::path dir = work_dir();
    const fs::path empty_arc = dir / "empty_arc.csv";
    std::ofstream(empty_arc) << "doc_id,segment_index,score,coverage\n";
    const fs::path svg = dir / "never.svg";
    fs::remove(svg);
    CHECK(run("plot --in " + empty_arc.string() + " --out-file " + svg.string()) == 1);
    CHECK_FALSE(fs::exists(svg));
}

TEST_CASE("cluster and classify-arc over synthetic ramp arcs") {
    const fs::path arcs = work_dir() / "arcs";
    fs::remove_all(arcs);
    fs::create_directories(arcs);

    // Six rising and six falling synthetic arcs with distinct slopes.
    for (int i = 0; i < 6; ++i) {
        {
            std::ofstream out(arcs / ("up" + std::to_string(i) + ".csv"));
            out << "doc_id,segment_index,score,coverage\n";
            for (int t = 0; t < 40; ++t) {
                out << "up" << i << "," << t << "," << 0.2 + 0.00004 * i + 0.01 * t << ",1\n";
            }
        }
        {
            std::ofstream out(arcs / ("down" + std::to_string(i) + ".csv"));
            out << "doc_id,segment_index,score,coverage\n";
            for (int t = 0; t < 40; ++t) {
                out << "down" << i << "," << t << "," << 0.8 - 0.00004 * i - 0.01 * t << ",1\n";
            }
        }
    }

    const fs::path out = work_dir() / "cluster_out";
    fs::remove_all(out);
    REQUIRE(run("cluster --arcs " + arcs.string() + " --k 2 --out " + out.string()) == 0);
    CHECK(fs::exists(out / "assignments.csv"));
    CHECK(fs::exists(out / "dendrogram.json"));
    CHECK(fs::exists(out / "dendrogram.svg"));
    CHECK(fs::exists(out / "cluster_means.csv"));
    CHECK(fs::exists(out / "cluster_001.svg"));
    CHECK(fs::exists(out / "cluster_002.svg"));
    CHECK(count_lines(out / "assignments.csv") == 13);  // header + 12 docs
    CHECK(count_lines(out / "normalized_arcs.csv") == 13);

    // The two slope families separate at k = 2.
    {
        std::ifstream in(out / "assignments.csv");
        std::string line;
        std::getline(in, line);  // header
        std::map<std::string, std::set<std::string>> by_prefix;
        while (std::getline(in, line)) {
            const auto comma = line.find(',');
            by_prefix[line.substr(0, 2)].insert(line.substr(comma + 1));
        }
        CHECK(by_prefix.at("up").size() == 1);
        CHECK(by_prefix.at("do").size() == 1);
        CHECK(by_prefix.at("up") != by_prefix.at("do"));
    }

    const fs::path labels = work_dir() / "labels.csv";
    REQUIRE(run("classify-arc --arcs " + arcs.string() + " --out-file " + labels.string()) == 0);
    {
        std::ifstream in(labels);
        std::string line;
        std::getline(in, line);
        CHECK(line.find("doc_id,label") == 0);
        std::size_t rises = 0, falls = 0;
        while (std::getline(in, line)) {
            if (line.find("RagsToRiches") != std::string::npos) ++rises;
            if (line.find("RichesToRags") != std::string::npos) ++falls;
        }
        CHECK(rises == 6);
        CHECK(falls == 6);
    }

    // Dendrogram JSON renders through the plot command too.
    CHECK(run("plot --kind dendrogram --in " + (out / "dendrogram.json").string() +
              " --out-file " + (out / "dendro2.svg").string()) == 0);
    CHECK(run("plot --kind cluster-mean --in " + (out / "cluster_means.csv").string() +
              " --out-file " + (out / "means.svg").string()) == 0);
}

TEST_CASE("cluster error paths") {
    const fs::path arcs = work_dir() / "one_arc";
    fs::remove_all(arcs);
    fs::create_directories(arcs);
    {
        std::ofstream out(arcs / "only.csv");
        out << "doc_id,segment_index,score,coverage\nonly,0,0.5,1\n";
    }
    const fs::path out = work_dir() / "cluster_err";
    CHECK(run("cluster --arcs " + arcs.string() + " --k 1 --out " + out.string()) == 1);
    CHECK(run("cluster --arcs /nonexistent_dir --k 2 --out " + out.string()) == 2);
}

TEST_CASE("structure train and predict on the bundled demo corpus") {
    const fs::path dir = work_dir() / "structure";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const fs::path model = dir / "model.json";
    const fs::path report = dir / "report.json";

    REQUIRE(run("structure train --data " + (kData / "structure_demo.csv").string() +
                " --model-out " + model.string() + " --report " + report.string()) == 0);
    REQUIRE(fs::exists(model));
    REQUIRE(fs::exists(report));

    // The demo corpus has exclusive markers; held-out accuracy is 1.0.
    const auto report_text = io::read_file(report);
    CHECK(report_text.find("\"accuracy\": 1.0") != std::string::npos);

    const fs::path probes = dir / "probes.csv";
    std::ofstream(probes) << "id,text\n"
                          << "p1,the road felt ominous and uneasy with suspense\n"
                          << "p2,a bounty and a prize and a windfall\n";
    const fs::path predictions = dir / "predictions.csv";
    REQUIRE(run("structure predict --model " + model.string() + " --input " + probes.string() +
                " --out-file " + predictions.string()) == 0);
    const auto text = io::read_file(predictions);
    CHECK(text.find("p1,tension") != std::string::npos);
    CHECK(text.find("p2,reward") != std::string::npos);
}

TEST_CASE("structure command error paths") {
    const fs::path dir = work_dir();
    SUBCASE("missing model file is exit 2") {
        CHECK(run("structure predict --model /nonexistent/model.json --input " +
                  (kData / "structure_demo.csv").string() + " --out-file " +
                  (dir / "p.csv").string()) == 2);
    }
    SUBCASE("single example cannot support a held-out split") {
        const fs::path tiny = dir / "tiny_train.csv";
        std::ofstream(tiny) << "label,text\nreward,gold coins\n";
        CHECK(run("structure train --data " + tiny.string() + " --model-out " +
                  (dir / "m.json").string()) == 1);
        // Without a split it trains fine.
        CHECK(run("structure train --data " + tiny.string() + " --model-out " +
                  (dir / "m.json").string() + " --ratio 1.0") == 0);
    }
}

TEST_CASE("pipeline chains score, classify and cluster") {
    const fs::path dir = work_dir() / "pipeline";
    fs::remove_all(dir);
    fs::create_directories(dir);

    // Build a small corpus: three copies of the story head with different ids.
    const std::string story = io::read_file(kData / "sample_story.txt");
    std::string manifest = "id,title,path\n";
    for (int i = 0; i < 3; ++i) {
        const std::string id = "doc" + std::to_string(i);
        std::ofstream(dir / (id + ".txt")) << story.substr(0, 40000 + 5000 * i);
        manifest += id + ",Title " + std::to_string(i) + "," + id + ".txt\n";
    }
    std::ofstream(dir / "manifest.csv") << manifest;

    const fs::path out = dir / "out";
    REQUIRE(run("pipeline --manifest " + (dir / "manifest.csv").string() + common_flags() +
                " --window 200 --out " + out.string() + " --k 2") == 0);
    CHECK(fs::exists(out / "arcs" / "doc0.csv"));
    CHECK(fs::exists(out / "arc_labels.csv"));
    CHECK(fs::exists(out / "clusters" / "assignments.csv"));
    CHECK(fs::exists(out / "clusters" / "dendrogram.svg"));
}

TEST_CASE("config file drives defaults and flags override it") {
    const fs::path dir = work_dir() / "config";
    fs::remove_all(dir);
    fs::create_directories(dir);

    const fs::path cfg = dir / "run.json";
    std::ofstream(cfg) << "{\n"
                       << "  \"lexicon_path\": \"" << (kData / "vad_lexicon.csv").string()
                       << "\",\n"
                       << "  \"window_size\": 250,\n"
                       << "  \"output_dir\": \"" << (dir / "out").string() << "\"\n"
                       << "}\n";

    REQUIRE(run("--config " + cfg.string() + " score " +
                (kData / "sample_story.txt").string()) == 0);
    const auto words =
        corpus::tokenize(io::read_file(kData / "sample_story.txt"), "story");
    CHECK(count_lines(dir / "out" / "sample_story.csv") == words.words.size() / 250 + 1);

    // Flag overrides the configured window.
    REQUIRE(run("--config " + cfg.string() + " score " +
                (kData / "sample_story.txt").string() + " --window 500") == 0);
    CHECK(count_lines(dir / "out" / "sample_story.csv") == words.words.size() / 500 + 1);

    // Unknown keys are rejected.
    const fs::path bad = dir / "bad.json";
    std::ofstream(bad) << "{\"window\": 10}\n";
    CHECK(run("--config " + bad.string() + " score " +
              (kData / "sample_story.txt").string()) == 1);
}
