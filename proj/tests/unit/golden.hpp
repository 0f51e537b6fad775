#pragma once

#include "polya/io.hpp"

#include <string>

#ifndef POLYA_TEST_GOLDEN_DIR
#error "POLYA_TEST_GOLDEN_DIR must point at tests/golden"
#endif

inline polya::CsvTable load_golden(const std::string& name)
{
    return polya::parse_csv(polya::read_file(std::string(POLYA_TEST_GOLDEN_DIR) + "/" + name));
}
