// CLI surface checks: byte-identical reruns, exit codes, and a classify
// smoke pass over the whole fixture corpus. Run as:
//   test_cli <valdyn-binary> <fixtures-dir>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
    std::printf("%s: %s\n", ok ? "ok" : "FAIL", what.c_str());
    if (!ok) ++failures;
}

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run(const std::string& cmd) {
    RunResult r;
    FILE* p = popen((cmd + " 2>/dev/null").c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: test_cli <valdyn> <fixtures-dir>\n");
        return 2;
    }
    std::string bin = argv[1];
    fs::path fixtures = argv[2];

    RunResult d6 = run(bin + " degrees --n 6 " + (fixtures / "ex53.map").string());
    check(d6.code == 0 && d6.out == "1 3 6 11 23 46 91\n", "degrees --n 6 ex53");

    RunResult rec = run(bin + " recur --n 10 --max-order 4 " + (fixtures / "ex53.map").string());
    check(rec.code == 0 && rec.out == "order=3 coeffs=1,1,2 lambda1=2\n", "recur ex53");

    RunResult eig = run(bin + " eigen " + (fixtures / "y2_x3.map").string());
    check(eig.code == 0 &&
              eig.out.find("kind=irrational nu(x)=-sqrt(2/3) nu(y)=-1 lambda1=sqrt(6)") == 0,
          "eigen y2_x3 one-liner");

    RunResult l2 = run(bin + " lambda2 " + (fixtures / "ex53.map").string());
    check(l2.code == 0 && l2.out == "lambda2 = 3\n", "lambda2 ex53");

    RunResult inv = run(bin + " invariants --weights 1/2 " + (fixtures / "ex53.map").string());
    check(inv.code == 0 && inv.out.find("alpha = 1/2\nthinness = -3/2\nmultiplicity = 1\n") == 0,
          "invariants --weights 1/2");

    RunResult blow = run(bin + " blowup --weights 1/2 " + (fixtures / "ex53.map").string());
    check(blow.code == 0 && blow.out == "0 1 -2 1 -2 neighbors=[2]\n"
                                        "1 1 -1 0 -1 neighbors=[2]\n"
                                        "2 2 -3 1/2 -3/2 neighbors=[0,1]\n"
                                        "prime = 2\n",
          "blowup dump format");

    RunResult ext = run(bin + " extends --p 1 --q 1 " + (fixtures / "x2py_y2.map").string());
    check(ext.code == 0 && ext.out == "extends = true\n", "extends x2py_y2");
    RunResult ext2 = run(bin + " extends --p 1 --q 1 " + (fixtures / "y3_x2.map").string());
    check(ext2.code == 1, "extends y3_x2 exits 1 (NotAnEigenvaluation)");

    RunResult wit = run(bin + " witness --bound 20 " + (fixtures / "x_xy.map").string());
    check(wit.code == 0 && wit.out.find("d = 0") != std::string::npos, "witness x_xy");

    RunResult jac = run(bin + " jacobian-check --weights 1 " + (fixtures / "ex53.map").string());
    check(jac.code == 0 && jac.out == "lhs = -4\nrhs = -4\nequal = true\n", "jacobian-check");

    RunResult push = run(bin + " push --weights 1/3 " + (fixtures / "ex53.map").string());
    check(push.code == 0 && push.out.rfind("d = 7/3\n", 0) == 0 &&
              push.out.find("image = chart=") != std::string::npos,
          "push --weights 1/3");

    RunResult usage = run(bin + " degrees");
    check(usage.code == 2, "usage error exits 2");
    RunResult nodom = run(bin + " lambda2 /dev/null");
    check(nodom.code == 1, "domain/IO error exits 1");

    // every fixture parses and classifies without crashing; reruns are
    // byte-identical
    std::vector<fs::path> maps;
    for (auto& e : fs::directory_iterator(fixtures))
        if (e.path().extension() == ".map") maps.push_back(e.path());
    std::sort(maps.begin(), maps.end());
    for (auto& m : maps) {
        RunResult a = run(bin + " classify " + m.string());
        RunResult b = run(bin + " classify " + m.string());
        check(a.code == 0 && a.out == b.out && !a.out.empty(),
              "classify deterministic: " + m.filename().string());
    }

    RunResult g1 = run(bin + " green grid --resolution 8 --lambda1 2 " +
                       (fixtures / "henon.map").string());
    RunResult g2 = run(bin + " green grid --resolution 8 --lambda1 2 " +
                       (fixtures / "henon.map").string());
    check(g1.code == 0 && g1.out == g2.out && g1.out.rfind("x,y,G,converged,n\n", 0) == 0,
          "green grid deterministic CSV");

    RunResult gv = run(bin + " green value --x 0 --y 100000000 " +
                       (fixtures / "henon.map").string());
    check(gv.code == 0 && gv.out.find("G = 18.42068") != std::string::npos,
          "green value near log(1e8)");

    std::printf("%s\n", failures == 0 ? "CLI CHECKS PASSED" : "CLI CHECKS FAILED");
    return failures == 0 ? 0 : 1;
}
