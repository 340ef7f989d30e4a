#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"

#include "edm/io.hpp"

using namespace edm;

namespace
{

Dataset parse(const std::string &text)
{
    std::istringstream in(text);
    return parse_csv(in);
}

std::string error_of(const std::string &text)
{
    try {
        parse(text);
    } catch (const IoError &e) {
        return e.what();
    }
    return {};
}

std::string to_csv(const SkillMatrix &m)
{
    std::ostringstream out;
    write_skill_matrix(out, m);
    return out.str();
}

} // namespace

TEST_CASE("load_csv parses columns as series")
{
    const auto d = parse("a,b\n1,2\n3,4\n");
    REQUIRE(d.size() == 2);
    CHECK(d.length() == 2);
    CHECK(d.names() == std::vector<std::string>{"a", "b"});
    CHECK(d[0][0] == 1.0);
    CHECK(d[0][1] == 3.0);
    CHECK(d[1][1] == 4.0);

    const auto single = parse("x\n0.5\n-1e-3\n+2\n");
    CHECK(single.size() == 1);
    CHECK(single[0][1] == -1e-3);
    CHECK(single[0][2] == 2.0);

    // CRLF line endings, spaces and blank trailing lines.
    const auto crlf = parse("a , b\r\n 1 , 2\r\n3,4\r\n\r\n");
    CHECK(crlf.names() == std::vector<std::string>{"a", "b"});
    CHECK(crlf[1][0] == 2.0);
}

TEST_CASE("load_csv errors")
{
    CHECK(error_of("").find("empty") != std::string::npos);
    CHECK(error_of("a,b\n").find("no data") != std::string::npos);
    CHECK(error_of("a,a\n1,2\n").find("duplicate") != std::string::npos);
    CHECK(error_of("a,b\n1,2\n3\n").find("row 3") != std::string::npos);

    const auto nan = error_of("a,b\n1,2\n3,NaN\n");
    CHECK(nan.find("row 3") != std::string::npos);
    CHECK(nan.find("column 2") != std::string::npos);
    CHECK(nan.find("'b'") != std::string::npos);

    const auto text = error_of("a,b\n1,x\n");
    CHECK(text.find("non-numeric") != std::string::npos);
    CHECK(text.find("row 2, column 2") != std::string::npos);

    CHECK_FALSE(error_of("a,b\n1,inf\n").empty());
    CHECK_FALSE(error_of("a,b\n1,\n").empty());
    CHECK_THROWS_AS(load_csv("/nonexistent/dir/file.csv"), IoError);
}

TEST_CASE("write_skill_matrix format")
{
    SkillMatrix m({"x", "y"});
    m(0, 0) = 1.0;
    m(0, 1) = 0.1234564;
    m(1, 0) = -0.5;
    const auto text = to_csv(m);
    CHECK(text == "library,x,y\nx,1.000000,0.123456\ny,-0.500000,NA\n");
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);
}

TEST_CASE("skill matrix round trips at six decimals")
{
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 20; trial++) {
        const std::size_t n = 1 + rng() % 8;
        std::vector<std::string> names;
        for (std::size_t i = 0; i < n; i++) names.push_back("s" + std::to_string(rng() % 1000) + "_" + std::to_string(i));
        SkillMatrix m(names);
        for (std::size_t i = 0; i < n; i++) {
            for (std::size_t j = 0; j < n; j++) {
                if (rng() % 5 != 0) m(i, j) = u(rng);
            }
        }
        const auto first = to_csv(m);
        std::istringstream in(first);
        const auto back = read_skill_matrix(in);
        CHECK(back.names() == names);
        for (std::size_t i = 0; i < n; i++) {
            for (std::size_t j = 0; j < n; j++) {
                CHECK(back(i, j).has_value() == m(i, j).has_value());
                if (m(i, j)) CHECK(std::abs(*back(i, j) - *m(i, j)) <= 5e-7);
            }
        }
        CHECK(to_csv(back) == first);
    }
}

TEST_CASE("skill matrix file I/O")
{
    const auto dir = std::filesystem::temp_directory_path() / "edm_test_io";
    std::filesystem::create_directories(dir);
    SkillMatrix m({"a"});
    m(0, 0) = 0.25;
    write_skill_matrix(m, dir / "m.csv");
    const auto back = read_skill_matrix(dir / "m.csv");
    CHECK(*back(0, 0) == 0.25);
    CHECK_THROWS_AS(write_skill_matrix(m, dir / "missing" / "m.csv"), IoError);

    std::istringstream bad("lib,a\na,1\n");
    CHECK_THROWS_AS(read_skill_matrix(bad), IoError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("write_predictions long format")
{
    CcmResult r;
    r.skill = SkillMatrix({"p", "q"});
    r.predictions.push_back({0, 1, 2, {0.5, 0.25}});
    std::ostringstream out;
    write_predictions(out, r);
    CHECK(out.str() == "library,target,time,predicted\np,q,2,0.5\np,q,3,0.25\n");
}
