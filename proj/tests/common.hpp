#ifndef EAG_TESTS_COMMON_HPP
#define EAG_TESTS_COMMON_HPP

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "eag/graph.hpp"

inline std::string readFixture(const std::string& name) {
    std::ifstream in(std::string(EAG_FIXTURE_DIR) + "/" + name);
    if (!in) throw std::runtime_error("missing fixture " + name);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

inline eag::Graph fixtureGraph(const std::string& name) { return eag::parsePmg(readFixture(name)); }

#endif
