//
// wave-recover: spectral recovery of solitary-wave surface profiles from
// bed-pressure traces.
//
// Copyright 2026 the wave-recover authors
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
//

// End-to-end checks of the wave-recover binary; the executable path comes
// from the WAVE_RECOVER_BIN environment variable set by the test harness.

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

#include "waverec/waverec.hpp"

#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace waverec;

namespace {

std::string binary_path() {
    const char* bin = std::getenv("WAVE_RECOVER_BIN");
    REQUIRE(bin != nullptr);
    return bin;
}

struct RunResult {
    int exit_code = -1;
    std::string stderr_text;
};

RunResult run_tool(const std::string& args, const fs::path& workdir) {
    fs::create_directories(workdir);
    const fs::path errfile = workdir / "stderr.txt";
    const std::string cmd =
        binary_path() + " " + args + " >/dev/null 2>" + errfile.string();
    const int status = std::system(cmd.c_str());
    RunResult res;
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream err(errfile);
    std::stringstream ss;
    ss << err.rdbuf();
    res.stderr_text = ss.str();
    return res;
}

std::vector<std::vector<std::string>> read_csv_rows(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        // a trailing empty cell is dropped by getline; restore it
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        rows.push_back(cells);
    }
    return rows;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const fs::path kBase = fs::temp_directory_path() / "waverec_cli_tests";

} // namespace

TEST_CASE("reconstruct with defaults") {
    const fs::path dir = kBase / "recon_default";
    fs::create_directories(dir);
    const RunResult res = run_tool("reconstruct --out " + dir.string(), dir);
    REQUIRE(res.exit_code == 0);

    const auto rows = read_csv_rows(dir / "profile.csv");
    REQUIRE(rows.size() == 4096 + 1); // header + one row per node
    CHECK(rows[0] == std::vector<std::string>{"q", "x_of_q", "eta", "eta_linear_baseline"});

    double eta_max = 0.0, eta_at_zero = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double q = std::stod(rows[i][0]);
        const double eta = std::stod(rows[i][2]);
        if (std::abs(eta) > eta_max) eta_max = std::abs(eta);
        if (q == 0.0) eta_at_zero = eta;
    }
    CHECK(std::abs(eta_at_zero - oracles::eta_peak_series()) < 1e-6);
    CHECK(eta_max == eta_at_zero);

    const auto spec_rows = read_csv_rows(dir / "spectrum.csv");
    REQUIRE(spec_rows.size() == 4096 + 1);
    CHECK(spec_rows[0] == std::vector<std::string>{"k", "abs_g_hat"});
    // ascending wavenumber order
    double prev = -1e300;
    for (std::size_t i = 1; i < spec_rows.size(); ++i) {
        const double k = std::stod(spec_rows[i][0]);
        CHECK(k > prev);
        prev = k;
    }
}

TEST_CASE("reconstruct rejects the critical speed perturbation") {
    const fs::path dir = kBase / "recon_eps_crit";
    const RunResult res = run_tool(
        "reconstruct --epsilon 0.08333333333333333 --out " + dir.string(), dir);
    CHECK(res.exit_code == 2);
    CHECK(res.stderr_text.find("radicand") != std::string::npos);
}

TEST_CASE("reconstruct a zero tabulated trace") {
    const fs::path dir = kBase / "recon_zero";
    fs::create_directories(dir);
    const fs::path csv = dir / "zero.csv";
    {
        std::ofstream out(csv);
        out << "q,p\n";
        for (int i = -60; i <= 60; ++i) out << 0.5 * i << ",0\n";
    }
    const RunResult res =
        run_tool("reconstruct --pressure-csv " + csv.string() + " --out " + dir.string(), dir);
    REQUIRE(res.exit_code == 0);
    const auto rows = read_csv_rows(dir / "profile.csv");
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::stod(rows[i][2]) == 0.0);
}

TEST_CASE("default speed sweep output") {
    const fs::path dir = kBase / "sweep_eps";
    fs::create_directories(dir);
    const RunResult res = run_tool("sweep --channel epsilon --out " + dir.string(), dir);
    REQUIRE(res.exit_code == 0);

    const auto rows = read_csv_rows(dir / "sweep_epsilon.csv");
    REQUIRE(rows.size() == 20 + 1);
    CHECK(rows[0][0] == "param_name");
    double prev_err = -1.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        REQUIRE(rows[i].size() == 7);
        CHECK(rows[i][0] == "epsilon");
        CHECK(rows[i][6] == "true");
        const double err = std::stod(rows[i][2]);
        CHECK(err > prev_err);
        prev_err = err;
        CHECK(!rows[i][5].empty()); // bound filled on admissible rows
    }

    // trailer comment carries the exponent fit
    const std::string text = read_file(dir / "sweep_epsilon.csv");
    const auto pos = text.find("# alpha_hat=");
    REQUIRE(pos != std::string::npos);
    std::istringstream trailer(text.substr(pos + 12));
    double alpha = 0.0;
    trailer >> alpha;
    CHECK(alpha > 0.0);
    CHECK(alpha <= 1.05);

    const std::string svg = read_file(dir / "sweep_epsilon.svg");
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("circle") != std::string::npos);
}

TEST_CASE("identical sweep invocations are byte-identical") {
    const fs::path dir1 = kBase / "det1";
    const fs::path dir2 = kBase / "det2";
    fs::create_directories(dir1);
    fs::create_directories(dir2);
    REQUIRE(run_tool("sweep --channel epsilon --out " + dir1.string(), dir1).exit_code == 0);
    REQUIRE(run_tool("sweep --channel epsilon --out " + dir2.string(), dir2).exit_code == 0);
    CHECK(read_file(dir1 / "sweep_epsilon.csv") == read_file(dir2 / "sweep_epsilon.csv"));
    CHECK(read_file(dir1 / "sweep_epsilon.svg") == read_file(dir2 / "sweep_epsilon.svg"));
}

TEST_CASE("depth sweep keeps the asymmetry and the zero row") {
    const fs::path dir = kBase / "sweep_gamma";
    fs::create_directories(dir);
    const RunResult res = run_tool("sweep --channel gamma --out " + dir.string(), dir);
    REQUIRE(res.exit_code == 0);
    const auto rows = read_csv_rows(dir / "sweep_gamma.csv");
    REQUIRE(rows.size() == 21 + 1);
    double e_neg = -1.0, e_pos = -1.0, e_zero = -1.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double v = std::stod(rows[i][1]);
        if (std::abs(v + 0.3) < 1e-12) e_neg = std::stod(rows[i][2]);
        if (std::abs(v - 0.3) < 1e-12) e_pos = std::stod(rows[i][2]);
        if (std::abs(v) < 1e-12) e_zero = std::stod(rows[i][2]);
    }
    CHECK(e_zero == 0.0);
    CHECK(e_neg > 0.0);
    CHECK(e_pos > 0.0);
    CHECK(e_neg != e_pos);
}

TEST_CASE("amplitude sweep marks inadmissible rows with empty fields") {
    const fs::path dir = kBase / "sweep_amp";
    fs::create_directories(dir);
    const RunResult res = run_tool(
        "sweep --channel delta_amplitude --min 0.1 --max 0.6 --count 6 --spacing log --out " +
            dir.string(),
        dir);
    REQUIRE(res.exit_code == 0);
    const auto rows = read_csv_rows(dir / "sweep_delta_amplitude.csv");
    REQUIRE(rows.size() == 6 + 1);
    bool saw_inadmissible = false;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i][6] == "false") {
            saw_inadmissible = true;
            CHECK(rows[i][2].empty());
            CHECK(rows[i][3].empty());
            CHECK(rows[i][4].empty());
            CHECK(rows[i][5].empty());
        }
    }
    CHECK(saw_inadmissible);
}

TEST_CASE("sweep with too few admissible points fails with a domain error") {
    const fs::path dir = kBase / "sweep_bad";
    const RunResult res = run_tool(
        "sweep --channel delta_amplitude --min 0.55 --max 0.9 --count 5 --spacing log --out " +
            dir.string(),
        dir);
    CHECK(res.exit_code == 2);
}

TEST_CASE("missing output directory is an I/O failure") {
    const fs::path dir = kBase / "io";
    const RunResult res =
        run_tool("reconstruct --out " + (kBase / "does" / "not" / "exist").string(), dir);
    CHECK(res.exit_code == 1);
}

TEST_CASE("diagnose on the default configuration") {
    const fs::path dir = kBase / "diag_default";
    fs::create_directories(dir);
    const RunResult res = run_tool("diagnose --out " + dir.string(), dir);
    REQUIRE(res.exit_code == 0);
    const nlohmann::json doc = nlohmann::json::parse(read_file(dir / "diagnostics.json"));
    CHECK(doc["sigma_hat"].get<double>() > 1.0);
    CHECK(doc["sigma_hat"].get<double>() < 4.0);
    CHECK(doc["fit_window"]["k_lo"].get<double>() == 1.0);
    CHECK(doc["fit_window"]["k_hi"].get<double>() == 4.0);
    CHECK(doc["cutoff_wavenumber"].get<double>() > 0.0);
}

TEST_CASE("diagnose recovers a planted exponential decay rate") {
    const fs::path dir = kBase / "diag_planted";
    fs::create_directories(dir);

    // plant ghat = e^{-2|k|} at the discrete level, push it back through the
    // pressure map and tabulate that trace at the working nodes
    const Grid grid = make_grid(4096, 30.0);
    Spectrum planted{grid, std::vector<std::complex<double>>(grid.n), false};
    for (std::size_t m = 0; m < grid.n; ++m)
        planted.coeffs[m] = std::exp(-2.0 * std::abs(grid.wavenumber(m)));
    const RealField g = inverse_transform(planted);
    const RealField p = pressure_from_g(g, 0.25);
    const fs::path csv = dir / "planted.csv";
    {
        std::ofstream out(csv);
        out.precision(17);
        out << "q,p\n";
        for (std::size_t j = 0; j < grid.n; ++j)
            out << grid.node(j) << "," << p.values[j] << "\n";
    }

    const RunResult res =
        run_tool("diagnose --pressure-csv " + csv.string() + " --out " + dir.string(), dir);
    REQUIRE(res.exit_code == 0);
    const nlohmann::json doc = nlohmann::json::parse(read_file(dir / "diagnostics.json"));
    CHECK(std::abs(doc["sigma_hat"].get<double>() - 2.0) < 1e-6);
}

TEST_CASE("diagnose compares a sweep against the calibrated bound") {
    const fs::path dir = kBase / "diag_sweep";
    fs::create_directories(dir);
    REQUIRE(run_tool("sweep --channel epsilon --out " + dir.string(), dir).exit_code == 0);
    const RunResult res = run_tool("diagnose --sweep-csv " +
                                       (dir / "sweep_epsilon.csv").string() + " --out " +
                                       dir.string(),
                                   dir);
    REQUIRE(res.exit_code == 0);
    const nlohmann::json doc = nlohmann::json::parse(read_file(dir / "diagnostics.json"));
    REQUIRE(doc.contains("bound_comparison"));
    CHECK(doc["bound_comparison"]["violations"].get<std::size_t>() == 0);
    CHECK(doc["bound_comparison"]["table"].size() == 20);
}

TEST_CASE("config file values seed the options and flags override them") {
    const fs::path dir = kBase / "config";
    fs::create_directories(dir);
    const fs::path cfg = dir / "run.cfg";
    std::ofstream(cfg.string()) << "# experiment setup\nn = 1024\nhalf-width = 30\ngamma = 0.1\n";

    REQUIRE(run_tool("reconstruct --config " + cfg.string() + " --out " + dir.string(), dir)
                .exit_code == 0);
    CHECK(read_csv_rows(dir / "profile.csv").size() == 1024 + 1);

    // command line wins over the file
    REQUIRE(run_tool("reconstruct --config " + cfg.string() + " --n 512 --out " + dir.string(),
                     dir)
                .exit_code == 0);
    CHECK(read_csv_rows(dir / "profile.csv").size() == 512 + 1);
}
