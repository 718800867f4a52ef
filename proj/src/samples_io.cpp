#include "akhs/samples_io.hpp"

#include "akhs/errors.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace akhs {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        size_t b = field.find_first_not_of(" \t\r");
        size_t e = field.find_last_not_of(" \t\r");
        fields.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
    }
    return fields;
}

double parse_number(const std::string& s, const std::string& origin, int row) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ValidationError(origin + ": row " + std::to_string(row) +
                              ": not a number: '" + s + "'");
    return v;
}

} // namespace

HistoProblem read_samples(std::istream& in, const std::string& origin) {
    HistoProblem problem;
    std::string line;
    int row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<std::string> fields = split_csv(line);
        if (row == 1 && fields[0] == "kind") continue; // header
        const std::string& kind = fields[0];
        std::vector<double> nums;
        for (size_t i = 1; i < fields.size(); ++i)
            nums.push_back(parse_number(fields[i], origin, row));
        auto bad = [&](const std::string& why) {
            return ValidationError(origin + ": row " + std::to_string(row) + ": " + why);
        };
        AverageSample sample;
        try {
            if (kind == "segment") {
                if (nums.size() != 3) throw bad("segment rows need center,half-width,value");
                sample.domain = Domain::segment(nums[0], nums[1]);
                sample.value = nums[2];
            } else if (kind == "box") {
                if (nums.size() < 3 || nums.size() % 2 == 0)
                    throw bad("box rows need c1..cd,h1..hd,value");
                size_t d = (nums.size() - 1) / 2;
                std::vector<double> c(nums.begin(), nums.begin() + d);
                std::vector<double> h(nums.begin() + d, nums.begin() + 2 * d);
                sample.domain = Domain::box(std::move(c), std::move(h));
                sample.value = nums.back();
            } else if (kind == "ball") {
                if (nums.size() < 3) throw bad("ball rows need c1..cd,r,value");
                size_t d = nums.size() - 2;
                std::vector<double> c(nums.begin(), nums.begin() + d);
                sample.domain = Domain::ball(std::move(c), nums[d]);
                sample.value = nums.back();
            } else {
                throw bad("unknown domain kind '" + kind + "'");
            }
        } catch (const ValidationError& e) {
            std::string what = e.what();
            if (what.rfind(origin, 0) == 0) throw;
            throw bad(what);
        }
        problem.samples.push_back(std::move(sample));
    }
    problem.validate();
    return problem;
}

HistoProblem load_samples(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open samples file: " + path);
    return read_samples(in, path);
}

void write_samples(const HistoProblem& problem, std::ostream& out) {
    out << "kind,c1..cd,e1..ed|r,value\n";
    char buf[32];
    auto num = [&buf](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    for (const AverageSample& s : problem.samples) {
        out << to_string(s.domain.kind);
        if (s.domain.kind == DomainKind::Segment) {
            out << ',' << num(s.domain.center[0]) << ',' << num(s.domain.extent[0]);
        } else {
            for (double c : s.domain.center) out << ',' << num(c);
            for (double e : s.domain.extent) out << ',' << num(e);
        }
        out << ',' << num(s.value) << '\n';
    }
}

void save_samples(const HistoProblem& problem, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open output file: " + path);
    write_samples(problem, out);
}

} // namespace akhs
