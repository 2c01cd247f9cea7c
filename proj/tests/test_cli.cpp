// ============================================================================
// End-to-end tests of the symstri binary (path in $SYMSTRI_BIN).
//
// Each case runs the real executable through popen-style capture, checking
// the documented contract: CSV shape, frozen values, the metadata line,
// exit codes, and byte-level determinism of repeated runs.
// ============================================================================

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out; // stdout only; stderr routed to a file per call
    std::string err;
};

std::string bin_path() {
    const char* p = std::getenv("SYMSTRI_BIN");
    REQUIRE_MESSAGE(p != nullptr, "SYMSTRI_BIN must point at the symstri binary");
    return p;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/** Run `symstri <args>`, capturing stdout, stderr, and the exit code. */
RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const std::string err_file = "/tmp/symstri_cli_err_" + std::to_string(counter++);
    RunResult r;
    const std::string cmd = bin_path() + " " + args + " 2>" + err_file;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = slurp(err_file);
    std::remove(err_file.c_str());
    return r;
}

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream ss(s);
    std::string line;
    while (std::getline(ss, line)) out.push_back(line);
    return out;
}

std::vector<std::string> cells_of(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

/** Pull "key": value out of a one-line JSON summary (flat documents only). */
std::string json_field(const std::string& doc, const std::string& key) {
    const std::string pat = "\"" + key + "\": ";
    const auto pos = doc.find(pat);
    REQUIRE_MESSAGE(pos != std::string::npos, "summary lacks key " << key << ": " << doc);
    std::size_t start = pos + pat.size();
    std::size_t end = start;
    if (doc[start] == '"') {
        ++start;
        end = doc.find('"', start);
    } else {
        end = doc.find_first_of(",}", start);
    }
    return doc.substr(start, end - start);
}

} // namespace

// ---------------------------------------------------------------------------

TEST_CASE("farey dissect order 3 reproduces the exact mediant table") {
    RunResult r = run_cli("farey dissect --order 3");
    CHECK(r.exit_code == 0);
    std::vector<std::string> ls = lines_of(r.out);
    REQUIRE(ls.size() == 7); // metadata + header + 5 fractions
    CHECK(ls[0].rfind("# schema=1 ", 0) == 0);
    CHECK(ls[1] == "a,q,left_num,left_den,right_num,right_den");
    CHECK(ls[2] == "0,1,1,4,1,4");
    CHECK(ls[3] == "1,3,1,12,1,15");
    CHECK(ls[4] == "1,2,1,10,1,10");
    CHECK(ls[5] == "2,3,1,15,1,12");
    CHECK(ls[6] == "1,1,1,4,1,4");
    // summary goes to stderr when the table is on stdout
    CHECK(json_field(r.err, "fractions") == "5");
}

TEST_CASE("space info reports the catalog descriptor fields") {
    RunResult r = run_cli("space info --space S2");
    CHECK(r.exit_code == 0);
    CHECK(json_field(r.out, "rank") == "1");
    CHECK(json_field(r.out, "dim") == "2");
    CHECK(json_field(r.out, "period") == "1");

    RunResult prod = run_cli("space info --space S3xS3");
    CHECK(json_field(prod.out, "dim") == "6");
    CHECK(json_field(prod.out, "factors") == "2");

    // --json emits a descriptor that resolve_space accepts back
    RunResult dump = run_cli("space info --space SU2 --json");
    CHECK(dump.exit_code == 0);
    const std::string path = "/tmp/symstri_cli_su2.json";
    std::ofstream(path) << dump.out;
    RunResult back = run_cli("space info --space " + path);
    CHECK(back.exit_code == 0);
    CHECK(json_field(back.out, "dim") == "3");
    CHECK(json_field(back.out, "rank") == "1");
    std::remove(path.c_str());
}

TEST_CASE("space list covers the named catalog") {
    RunResult r = run_cli("space list");
    CHECK(r.exit_code == 0);
    std::vector<std::string> ls = lines_of(r.out);
    REQUIRE(ls.size() >= 3);
    CHECK(ls[1] == "name,rank,dim,period,volume");
    bool saw_su2 = false;
    for (const std::string& l : ls)
        if (l.rfind("SU2,", 0) == 0) {
            saw_su2 = true;
            CHECK(cells_of(l)[2] == "3"); // dim
        }
    CHECK(saw_su2);
}

TEST_CASE("kernel scan writes schema'd CSV and a frozen summary shape") {
    const std::string out = "/tmp/symstri_cli_kernel.csv";
    RunResult r = run_cli("kernel scan --space T2 --N 8 --out " + out);
    CHECK(r.exit_code == 0);
    // table went to the file, so the summary sits on stdout
    CHECK(json_field(r.out, "space") == "T2");
    CHECK(json_field(r.out, "N") == "8");
    const double c = std::stod(json_field(r.out, "C_of_N"));
    CHECK(c > 1.0);
    CHECK(c < 1e3);

    std::vector<std::string> ls = lines_of(slurp(out));
    REQUIRE(ls.size() > 2);
    CHECK(ls[0].rfind("# schema=1 ", 0) == 0);
    CHECK(ls[0].find("command='kernel scan'") != std::string::npos);
    CHECK(ls[1] == "t,a,q,L,sup_mod,rhs,ratio");
    CHECK(ls.size() == 2 + static_cast<std::size_t>(std::stoll(json_field(r.out, "rows"))));
    // every data row has 7 cells and ratio = sup_mod / rhs
    for (std::size_t i = 2; i < ls.size(); i += 97) {
        std::vector<std::string> cs = cells_of(ls[i]);
        REQUIRE(cs.size() == 7);
        const double sup = std::stod(cs[4]), rhs = std::stod(cs[5]), ratio = std::stod(cs[6]);
        CHECK(ratio == doctest::Approx(sup / rhs).epsilon(1e-9));
    }
    std::remove(out.c_str());
}

TEST_CASE("identical invocations give byte-identical CSV files") {
    const std::string a = "/tmp/symstri_cli_det_a.csv", b = "/tmp/symstri_cli_det_b.csv";
    RunResult r1 = run_cli("stri scan --space T2 --p 8 --N 4 --trials 3 --out " + a);
    RunResult r2 = run_cli("stri scan --space T2 --p 8 --N 4 --trials 3 --out " + b);
    CHECK(r1.exit_code == 0);
    CHECK(r2.exit_code == 0);
    const std::string ba = slurp(a), bb = slurp(b);
    CHECK(!ba.empty());
    CHECK(ba == bb);
    CHECK(r1.out == r2.out); // summaries agree too
    // a different seed changes the sampled trials
    RunResult r3 = run_cli("stri scan --space T2 --p 8 --N 4 --trials 3 --seed 43 --out " + b);
    CHECK(r3.exit_code == 0);
    CHECK(slurp(b) != ba);
    std::remove(a.c_str());
    std::remove(b.c_str());
}

TEST_CASE("exit codes follow the documented taxonomy") {
    CHECK(run_cli("bogus").exit_code == 2);             // unknown command
    CHECK(run_cli("farey dissect").exit_code == 2);     // missing required flag
    CHECK(run_cli("count theta --form I2 --n 100 --a 1 --q 3 --delta x/y").exit_code == 2);
    CHECK(run_cli("--help").exit_code == 0);

    RunResult bad_space = run_cli("space info --space Q9");
    CHECK(bad_space.exit_code == 1);
    CHECK(bad_space.err.find("Q9") != std::string::npos);

    RunResult bad_arc = run_cli("count theta --form I4 --n 100 --a 1 --q 10 --delta 0");
    CHECK(bad_arc.exit_code == 1); // q >= sqrt(n): domain error

    RunResult lowres = run_cli("stri scan --space T1 --p 6 --N 4 --t-nodes 10");
    CHECK(lowres.exit_code == 3);
    CHECK(lowres.err.find("t_nodes >= 512") != std::string::npos);

    RunResult lowker = run_cli("kernel scan --space T2 --N 8 --t-samples 3");
    CHECK(lowker.exit_code == 3);
    CHECK(lowker.err.find("needs") != std::string::npos);
}

TEST_CASE("count reps matches the two-squares table") {
    RunResult r = run_cli("count reps --form I2 --max-n 25");
    CHECK(r.exit_code == 0);
    std::vector<std::string> ls = lines_of(r.out);
    REQUIRE(ls.size() == 2 + 26);
    CHECK(ls[1] == "n,count");
    const long long expect[26] = {1, 4, 4, 0, 4, 8, 0, 0, 4, 4, 8, 0, 0,
                                  8, 0, 0, 4, 8, 4, 0, 8, 0, 0, 0, 0, 12};
    for (int n = 0; n <= 25; ++n) {
        std::vector<std::string> cs = cells_of(ls[2 + n]);
        CHECK(cs[0] == std::to_string(n));
        CHECK(cs[1] == std::to_string(expect[n]));
    }
    CHECK(json_field(r.err, "ball_total") != "0");
}

TEST_CASE("count reps accepts a form file") {
    const std::string path = "/tmp/symstri_cli_form.txt";
    std::ofstream(path) << "# binary form 2x^2 + 2xy + 3y^2\n2\n2 1\n1 3\n";
    RunResult r = run_cli("count reps --form " + path + " --max-n 3");
    CHECK(r.exit_code == 0);
    std::vector<std::string> ls = lines_of(r.out);
    REQUIRE(ls.size() == 6);
    CHECK(ls[2] == "0,1");
    CHECK(ls[3] == "1,0");
    CHECK(ls[4] == "2,2"); // x = (+-1, 0)
    CHECK(ls[5] == "3,4"); // x = (0, +-1), (+-1, -+1)
    std::remove(path.c_str());

    RunResult missing = run_cli("count reps --form /tmp/no_such_form --max-n 3");
    CHECK(missing.exit_code == 1);
}

TEST_CASE("count fit reports slope against the default theory exponent") {
    RunResult r = run_cli("count fit --form I2 --max-n 4096");
    CHECK(r.exit_code == 0);
    const double slope = std::stod(json_field(r.out, "slope"));
    CHECK(slope >= 0.0);
    CHECK(slope <= 0.3);
    CHECK(json_field(r.out, "theory_exponent") == "0");
}

TEST_CASE("count pairs reproduces frozen joint counts") {
    RunResult one = run_cli("count pairs --space T2 --center 6,6 --side 4 --N2 4 --n 48");
    CHECK(one.exit_code == 0);
    CHECK(json_field(one.out, "count") == "4");
    RunResult zero = run_cli("count pairs --space T2 --center 6,6 --side 4 --N2 4 --n 41");
    CHECK(json_field(zero.out, "count") == "0");

    RunResult hist = run_cli("count pairs --space T2 --center 6,6 --side 4 --N2 4"
                             " --format summary");
    CHECK(hist.exit_code == 0);
    CHECK(json_field(hist.out, "pairs_total") == "3700"); // 25 cube points x 148 band points
}

TEST_CASE("farey spectrum emits per-mode rows under the scaling bound") {
    RunResult r = run_cli("farey spectrum --N 16 --Q 4 --L 8 --n-max 32");
    CHECK(r.exit_code == 0);
    std::vector<std::string> ls = lines_of(r.out);
    REQUIRE(ls.size() == 2 + 32);
    CHECK(ls[1] == "n,coeff_mod,bound");
    const double bound = 4.0 * 4.0 / (16.0 * 8.0);
    double max_seen = 0.0;
    for (std::size_t i = 2; i < ls.size(); ++i) {
        std::vector<std::string> cs = cells_of(ls[i]);
        REQUIRE(cs.size() == 3);
        CHECK(cs[0] == std::to_string(i - 1));
        CHECK(std::stod(cs[2]) == doctest::Approx(bound));
        max_seen = std::max(max_seen, std::stod(cs[1]));
    }
    const double sup = std::stod(json_field(r.err, "sup_full_range"));
    CHECK(sup >= max_seen - 1e-15); // full-range sup dominates any prefix
    CHECK(json_field(r.err, "l1_mass") != "0");
}

TEST_CASE("stri scan emits the documented row shape and summary") {
    RunResult r = run_cli("stri scan --space T1 --p 6 --N 2,4 --trials 2");
    CHECK(r.exit_code == 0);
    std::vector<std::string> ls = lines_of(r.out);
    REQUIRE(ls.size() == 2 + 4); // 2 N values x 2 trials
    CHECK(ls[1] == "N,trial,norm,ref_power,ratio");
    std::vector<std::string> c0 = cells_of(ls[2]);
    CHECK(c0[0] == "2");
    CHECK(c0[1] == "0");
    // p = 6 on T1 is the scale-invariant pair: ref_power N^0 = 1
    CHECK(std::stod(c0[3]) == doctest::Approx(1.0));
    CHECK(json_field(r.err, "admissible") == "true");
    CHECK(json_field(r.err, "ref_exponent") == "0");
    const double mm = std::stod(json_field(r.err, "max_over_min"));
    CHECK(mm >= 1.0);

    // inadmissible p is reported, not refused
    RunResult low = run_cli("stri scan --space T1 --p 4 --N 2 --trials 1 --format summary");
    CHECK(low.exit_code == 0);
    CHECK(json_field(low.out, "admissible") == "false");
    CHECK(json_field(low.out, "ref_exponent") == "-0.25"); // 1/2 - 3/4 on the circle
    // a single N leaves the fit undefined; JSON has no NaN, so null it is
    CHECK(json_field(low.out, "slope") == "null");
    CHECK(json_field(low.out, "residual") == "null");
}

TEST_CASE("stri bilinear rows carry the low-band reference power") {
    RunResult r = run_cli("stri bilinear --space S3 --N1 4 --N2-list 1,2 --trials 1");
    CHECK(r.exit_code == 0);
    std::vector<std::string> ls = lines_of(r.out);
    REQUIRE(ls.size() == 4);
    CHECK(ls[1] == "N1,N2,trial,norm,ref_power,ratio,stderr,exact");
    std::vector<std::string> c = cells_of(ls[3]);
    CHECK(c[0] == "4");
    CHECK(c[1] == "2");
    CHECK(std::stod(c[4]) == doctest::Approx(std::sqrt(2.0))); // N2^{dim/2-1}
    CHECK(c[7] == "1");                                        // exact quadrature
    CHECK(json_field(r.err, "shape_warning") == "false");
    CHECK(json_field(r.err, "sampled") == "false");

    RunResult torus = run_cli("stri bilinear --space T2 --N1 4 --N2-list 2 --trials 1"
                              " --format summary");
    CHECK(torus.exit_code == 0);
    CHECK(json_field(torus.out, "shape_warning") == "true");
}

TEST_CASE("eigen scan skips empty shells and reports them") {
    RunResult r = run_cli("eigen scan --space T2 --p 4 --shells 1,3,25 --trials 1"
                          " --mc-points 20000");
    CHECK(r.exit_code == 0);
    std::vector<std::string> ls = lines_of(r.out);
    CHECK(ls[1] == "shell,N,trial,norm,ref_power,ratio,stderr");
    REQUIRE(ls.size() == 4); // shells 1 and 25 only; 3 is not a sum of two squares
    CHECK(cells_of(ls[2])[0] == "1");
    CHECK(cells_of(ls[3])[0] == "25");
    CHECK(cells_of(ls[3])[1] == "5"); // N = sqrt(25)
    CHECK(json_field(r.err, "skipped_shells") == "3");
    CHECK(json_field(r.err, "ref_exponent") == "-0.5");
}

TEST_CASE("spherical eval cross-checks the recurrence on the polar grid") {
    RunResult r = run_cli("spherical eval --space S2 --lambda 4 --thetas 5");
    CHECK(r.exit_code == 0);
    std::vector<std::string> ls = lines_of(r.out);
    REQUIRE(ls.size() == 7);
    CHECK(ls[1] == "lambda_coords,theta,value_real,value_imag,reference,abs_error");
    // P_4(1) = 1, P_4(0) = 3/8
    CHECK(std::stod(cells_of(ls[2])[2]) == doctest::Approx(1.0));
    CHECK(std::stod(cells_of(ls[4])[2]) == doctest::Approx(0.375));
    CHECK(std::stod(json_field(r.err, "max_abs_error")) < 1e-12);

    RunResult prod = run_cli("spherical eval --space S2 --lambda 3 --mu 2 --thetas 4"
                             " --format summary");
    CHECK(prod.exit_code == 0);
    CHECK(std::stod(json_field(prod.out, "max_abs_error")) < 1e-8);
    CHECK(json_field(prod.out, "support_size") == "6");
}

TEST_CASE("spherical check agrees across routes and flags non-spheres") {
    RunResult r = run_cli("spherical check --n-max 12 --thetas 16 --format summary");
    CHECK(r.exit_code == 0);
    CHECK(std::stod(json_field(r.out, "max_abs_error")) < 1e-9);
    CHECK(json_field(r.out, "precision_warning") == "false");
    CHECK(run_cli("spherical check --space T2").exit_code == 1);
}

TEST_CASE("support check finds only predicted modes for a spherical product") {
    RunResult r = run_cli("support check --space S2 --lambda 3 --mu 2 --format summary");
    CHECK(r.exit_code == 0);
    CHECK(json_field(r.out, "all_detected_inside") == "true");
    CHECK(std::stod(json_field(r.out, "max_outside")) < 1e-8);
    CHECK(json_field(r.out, "detected") == "3"); // parity: degrees 1, 3, 5
    CHECK(json_field(r.out, "support_size") == "6");
}

TEST_CASE("threads flag and environment fallback are accepted") {
    RunResult r = run_cli("--threads 4 space info --space T1");
    CHECK(r.exit_code == 0);
    RunResult env = run_cli("space list");
    CHECK(env.exit_code == 0); // metadata echoes the resolved value
    CHECK(lines_of(env.out)[0].find("threads=") != std::string::npos);
}
