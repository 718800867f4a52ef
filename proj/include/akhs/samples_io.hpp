#pragma once

#include "akhs/domain.hpp"

#include <iosfwd>
#include <string>

namespace akhs {

// Samples CSV format (UTF-8, '.' decimal, comma separator):
//   header  kind,c1..cd,e1..ed|r,value
//   segment,<center>,<half-width>,<value>
//   box,c1,...,cd,h1,...,hd,value
//   ball,c1,...,cd,r,value
HistoProblem load_samples(const std::string& path);
HistoProblem read_samples(std::istream& in, const std::string& origin = "<stream>");

void save_samples(const HistoProblem& problem, const std::string& path);
void write_samples(const HistoProblem& problem, std::ostream& out);

} // namespace akhs
