// Regenerates the golden census files from the serial argsort reference.
// Usage: golden_gen <output-dir>
//
// The committed files under tests/golden/ were produced by this tool; the
// library sweep must reproduce them byte for byte (see verify --suite
// goldens and the acceptance suite).

#include <fstream>
#include <iostream>
#include <string>

#include "oracle.hpp"
#include "syra/census.hpp"
#include "syra/report.hpp"
#include "syra/verify.hpp"

namespace {

syra::PatternCensus from_oracle(std::uint64_t limit, int n) {
    const auto ref = oracle::census(limit, n);
    syra::PatternCensus census;
    census.n = n;
    census.limit = limit;
    census.denominator = (limit + 1) / 2;
    census.repeated = ref.repeated;
    for (const auto& [text, cnt] : ref.counts) {
        const auto sigma = syra::PermPattern::parse(text);
        if (!sigma) {
            std::cerr << "internal error: unparsable pattern " << text << '\n';
            std::exit(1);
        }
        census.counts.emplace(*sigma, cnt);
    }
    return census;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: golden_gen <output-dir>\n";
        return 2;
    }
    const std::string dir = argv[1];
    for (const auto limit : syra::golden_limits) {
        for (const auto n : syra::golden_lengths) {
            const std::string path = dir + "/" + syra::golden_file_name(limit, n);
            std::ofstream out(path, std::ios::binary);
            if (!out) {
                std::cerr << "cannot write " << path << '\n';
                return 1;
            }
            out << syra::census_csv(from_oracle(limit, n));
            std::cout << "wrote " << path << '\n';
        }
    }
    return 0;
}
