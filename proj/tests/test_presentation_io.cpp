#include <random>

#include "doctest.h"
#include "pvac/presentation_io.hpp"
#include "samplers.hpp"
#include "susy_samplers.hpp"

using namespace pvac;

TEST_CASE("Poisson presentations survive a JSON round trip") {
    std::mt19937 rng(11);
    for (int i = 0; i < 20; ++i) {
        PoissonPresentation P = i == 0 ? samplers::kplus_g() : samplers::random_presentation(rng);
        PresentationFile f = parse_presentation(poisson_to_json(P));
        REQUIRE(f.kind == FileKind::Poisson);
        REQUIRE(f.poisson);
        CHECK(*f.poisson == P);
    }
}

TEST_CASE("SUSY presentations survive a JSON round trip") {
    std::mt19937 rng(12);
    for (int N = 0; N <= 1; ++N)
        for (int i = 0; i < 15; ++i) {
            SusyPvaPresentation P =
                susy_samplers::random_presentation(rng, N, static_cast<susy_samplers::Kind>(i % 3));
            // a bracket that is not sesquilinear still has to serialize faithfully
            const int d = P.dim();
            Mono m(1);
            m.e[0] = i % 3;
            if (N == 1 && i % 2) m.th[0] = make_set({1});
            P.br[(d - 1) * d].add(m, {0}, Scalar(i + 1) / 2);
            PresentationFile f = parse_presentation(susy_to_json(P));
            REQUIRE(f.susy);
            CHECK(f.susy->V.T() == P.V.T());
            CHECK(f.susy->V.parities() == P.V.parities());
            if (N == 1) CHECK(f.susy->V.S(1) == P.V.S(1));
            CHECK(f.susy->prod == P.prod);
            CHECK(f.susy->br == P.br);
        }
}

TEST_CASE("theta indices may be listed in any order") {
    const char* a = R"({"kind":"susy-pva","N":2,"dim":1,"parities":[1],
        "bracket":[[[{"theta":[2,1],"coef":["3"]}]]]})";
    const char* b = R"({"kind":"susy-pva","N":2,"dim":1,"parities":[1],
        "bracket":[[[{"theta":[1,2],"coef":["-3"]}]]]})";
    CHECK(parse_presentation(a).susy->br == parse_presentation(b).susy->br);
}

TEST_CASE("malformed files are rejected with a location") {
    auto msg = [](const std::string& text) {
        try {
            parse_presentation(text);
        } catch (const ParseError& e) {
            return std::string(e.what());
        }
        return std::string("accepted");
    };
    CHECK(msg("{") .find("JSON") != std::string::npos);
    CHECK(msg(R"({"kind":"ring","dim":1})").find("kind") != std::string::npos);
    CHECK(msg(R"({"kind":"poisson","dim":1,"product":[[["1","2"]]]})").find("product[0][0]") != std::string::npos);
    CHECK(msg(R"({"kind":"poisson","dim":1,"product":[[["1/0"]]]})").find("product[0][0][0]") != std::string::npos);
    CHECK(msg(R"({"kind":"lie","dim":1,"product":[[["1"]]]})").find("not allowed") != std::string::npos);
    CHECK(msg(R"({"kind":"poisson","dim":1,"N":1})").find("not allowed") != std::string::npos);
    CHECK(msg(R"({"kind":"h-module","dim":1,"parities":[2]})").find("parities") != std::string::npos);
    CHECK(msg(R"({"kind":"susy-pva","N":1,"dim":1,"bracket":[[[{"theta":[2],"coef":["1"]}]]]})")
              .find("out of range") != std::string::npos);
    CHECK(msg(R"({"kind":"susy-pva","N":2,"dim":1,"bracket":[[[{"theta":[1,1],"coef":["1"]}]]]})")
              .find("repeated") != std::string::npos);
    CHECK(msg(R"({"kind":"poisson","dim":0})") == "accepted");
}
