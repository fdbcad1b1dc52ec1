#include <catch2/catch.hpp>

#include "spheresync/graph.hpp"
#include "spheresync/kronecker.hpp"
#include "spheresync/linear_operator.hpp"
#include "spheresync/rng.hpp"
#include "spheresync/verify.hpp"

using namespace spheresync;

TEST_CASE("verify_prop2 on the single-edge graph") {
    Digraph g(2);
    g.set_weight(1, 0, 1.0);
    const Prop2Report report = verify_prop2(g, 1e-10);
    CHECK(report.passed);
    CHECK(report.spectra.max_residual <= 1e-10);
    // computed multiset is {0, 0, 1, 2}
    REQUIRE(report.spectra.computed.values.size() == 4);
    CHECK(std::abs(report.spectra.computed.values[0]) <= 1e-12);
    CHECK(std::abs(report.spectra.computed.values[1]) <= 1e-12);
    CHECK(std::abs(report.spectra.computed.values[2] - Complex(1.0, 0.0)) <= 1e-12);
    CHECK(std::abs(report.spectra.computed.values[3] - Complex(2.0, 0.0)) <= 1e-12);
}

TEST_CASE("verify_prop2 on a random m=5 graph") {
    const Digraph g = generate(GraphFamily::random_spanning_tree_plus_edges, 5, 1);
    const Prop2Report report = verify_prop2(g, 1e-7);
    CHECK(report.passed);
}

TEST_CASE("verify_prop2 rejects rank-deficient graphs") {
    CHECK_THROWS_AS(verify_prop2(generate(GraphFamily::disconnected_pair, 4), 1e-7), std::runtime_error);
}

TEST_CASE("verify_lemma1 fixed instances") {
    Digraph edge(2);
    edge.set_weight(1, 0, 1.0);
    const Lemma1Report r2 = verify_lemma1(laplacian(edge), 1e-10);
    CHECK(r2.passed);
    REQUIRE(r2.spectra.computed.values.size() == 1);
    CHECK(std::abs(r2.spectra.computed.values[0] - Complex(1.0, 0.0)) <= 1e-12);

    // 3-cycle: {1.5 +- 0.866i, 3}
    const Lemma1Report r3 = verify_lemma1(laplacian(generate(GraphFamily::directed_cycle, 3)), 1e-10);
    CHECK(r3.passed);
    const double imag = 0.8660254037844386;
    CHECK(std::abs(r3.spectra.computed.values[0] - Complex(1.5, -imag)) <= 1e-12);
    CHECK(std::abs(r3.spectra.computed.values[1] - Complex(1.5, imag)) <= 1e-12);
    CHECK(std::abs(r3.spectra.computed.values[2] - Complex(3.0, 0.0)) <= 1e-12);

    // complete m=3: {3, 3, 6}
    const Lemma1Report rc = verify_lemma1(laplacian(generate(GraphFamily::complete, 3)), 1e-10);
    CHECK(rc.passed);
    CHECK(std::abs(rc.spectra.computed.values[0] - Complex(3.0, 0.0)) <= 1e-12);
    CHECK(std::abs(rc.spectra.computed.values[1] - Complex(3.0, 0.0)) <= 1e-12);
    CHECK(std::abs(rc.spectra.computed.values[2] - Complex(6.0, 0.0)) <= 1e-12);
}

TEST_CASE("verify_lemma1 holds for every family, m up to 8") {
    // includes the defective path family: balancing keeps both sides exact
    for (GraphFamily f : {GraphFamily::complete, GraphFamily::directed_cycle, GraphFamily::star_out,
                          GraphFamily::directed_path, GraphFamily::disconnected_pair,
                          GraphFamily::random_spanning_tree_plus_edges}) {
        for (int m = 2; m <= 8; ++m) {
            INFO(family_name(f) << " m=" << m);
            CHECK(verify_lemma1(laplacian(generate(f, m, 2)), 1e-7).passed);
        }
    }
}

TEST_CASE("verify_lemma3 with B = 0 is the identity case") {
    Rng rng(3);
    Mat a(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) a(i, j) = rng.uniform(-1.0, 1.0);
    const Lemma3Report report = verify_lemma3(a, Mat(4, 4), Mat(4, 4), 1e-9);
    CHECK(report.passed);
    CHECK(report.plus.max_residual == 0.0);
    CHECK(report.minus.max_residual == 0.0);
}

TEST_CASE("verify_lemma3 with a rank-1 nilpotent perturbation of the identity") {
    // B = u v^T with v^T u = 0, A = C = I: spectra stay all ones. I + B has a
    // size-2 Jordan block at 1, so the computed values smear by O(sqrt(eps));
    // the tolerance accounts for that.
    const int n = 5;
    Mat u(n, 1), v(n, 1);
    u(0, 0) = 1.0;
    u(1, 0) = 2.0;
    u(2, 0) = -1.0;
    v(0, 0) = 2.0;
    v(1, 0) = 1.0;
    v(2, 0) = 4.0; // v . u = 2 + 2 - 4 = 0
    const Mat b = u * v.transpose();
    const Lemma3Report report = verify_lemma3(Mat::identity(n), b, Mat::identity(n), 1e-6);
    CHECK(report.passed);
    for (const Complex& w : report.plus.computed.values) CHECK(std::abs(w - Complex(1.0, 0.0)) <= 1e-6);
    for (const Complex& w : report.minus.computed.values) CHECK(std::abs(w - Complex(1.0, 0.0)) <= 1e-6);
}

TEST_CASE("verify_lemma3 rejects violated preconditions") {
    // B^2 != 0
    Mat b = Mat::identity(3);
    CHECK_THROWS_WITH(verify_lemma3(Mat::identity(3), b, Mat::identity(3), 1e-9),
                      Catch::Contains("B^2"));
    // AB != BC: B C pushes weight into an entry A B cannot reach
    Mat a = Mat(3, 3);
    a(0, 1) = 1.0;
    Mat nil(3, 3);
    nil(0, 2) = 1.0; // nilpotent
    Mat c(3, 3);
    c(2, 0) = 5.0; // (B C)(0,0) = 5 while A B = 0
    CHECK_THROWS_WITH(verify_lemma3(a, nil, c, 1e-12), Catch::Contains("AB = BC"));
    CHECK_THROWS_AS(verify_lemma3(Mat(2, 2), Mat(3, 3), Mat(3, 3), 1e-9), std::invalid_argument);
}

TEST_CASE("nilpotent split on the 3-cycle: annihilation identities and spectra") {
    const Laplacian l = laplacian(generate(GraphFamily::directed_cycle, 3));
    const Lemma3ConstructionReport report = verify_lemma3_construction(l, 1e-7);
    CHECK(report.b_squared_max_abs == 0.0); // exact for integer weights
    CHECK(report.il_b_max_abs == 0.0);
    CHECK(report.onehat_b_max_abs == 0.0);
    CHECK(report.passed);
    CHECK(report.spectra.max_residual <= 1e-7);

    // A - B is exactly the operator matrix
    const Mat eye = Mat::identity(3);
    const Mat one = Mat::ones(3);
    const Mat hat = hat_matrix(l.entries);
    const Mat a = kron(l.entries, eye) + kron(eye, l.entries) - kron(one, hat);
    CHECK(max_abs_diff(a - kron(hat, one), build_operator_T(l).matrix) == 0.0);
}

TEST_CASE("semisimplicity probe distinguishes the families") {
    for (int m = 3; m <= 8; ++m) {
        const Mat path = laplacian(generate(GraphFamily::directed_path, m)).entries;
        CHECK_FALSE(spectrum_semisimple(path, eigenvalues(path)));

        const Mat star = laplacian(generate(GraphFamily::star_out, m)).entries;
        CHECK(spectrum_semisimple(star, eigenvalues(star)));

        const Mat complete = laplacian(generate(GraphFamily::complete, m)).entries;
        CHECK(spectrum_semisimple(complete, eigenvalues(complete)));

        const Mat cycle = laplacian(generate(GraphFamily::directed_cycle, m)).entries;
        CHECK(spectrum_semisimple(cycle, eigenvalues(cycle)));
    }
}
