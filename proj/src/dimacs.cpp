#include "forge/dimacs.hpp"

#include <sstream>

#include "forge/error.hpp"

namespace forge {

DimacsResult parse_dimacs(const std::string& text) {
    DimacsResult out;
    std::istringstream in(text);
    std::string line;
    long long header_n = -1, header_m = -1;

    // header: first non-comment line must be "p cnf N M"
    std::streampos body_start = 0;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;  // blank
        if (tok == "c" || tok[0] == 'c') continue;
        if (tok != "p") throw MalformedHeader("expected 'p cnf' header, got: " + line);
        std::string fmt;
        if (!(ls >> fmt) || fmt != "cnf") throw MalformedHeader("expected 'p cnf' header");
        if (!(ls >> header_n >> header_m)) throw MalformedHeader("header missing N or M");
        if (header_n < 0 || header_m < 0) throw MalformedHeader("negative N or M");
        std::string extra;
        if (ls >> extra) throw MalformedHeader("trailing tokens in header");
        body_start = in.tellg();
        break;
    }
    if (header_n < 0) throw MalformedHeader("no 'p cnf' header found");

    out.formula.num_vars = int(header_n);
    std::vector<int> current;
    std::string tok;
    in.clear();
    in.seekg(body_start);
    while (in >> tok) {
        if (tok[0] == 'c') {
            std::getline(in, line);  // rest of the comment line
            continue;
        }
        long long lit;
        try {
            std::size_t used = 0;
            lit = std::stoll(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw MalformedHeader("not a literal: " + tok);
        }
        if (lit == 0) {
            if (current.empty()) throw EmptyClause("clause with no literals");
            out.formula.clauses.push_back(Clause{current});
            current.clear();
            continue;
        }
        long long v = lit < 0 ? -lit : lit;
        if (v > header_n)
            throw LiteralOutOfRange("literal " + std::to_string(lit) + " with N=" +
                                    std::to_string(header_n));
        current.push_back(int(lit));
    }
    if (!current.empty()) throw MalformedHeader("unterminated clause at end of input");

    if (static_cast<long long>(out.formula.clauses.size()) != header_m)
        out.warnings.push_back("header declares " + std::to_string(header_m) + " clauses, body has " +
                               std::to_string(out.formula.clauses.size()) + "; body wins");
    out.formula.validate();
    return out;
}

std::string to_dimacs(const CnfFormula& f) {
    std::ostringstream os;
    os << "p cnf " << f.num_vars << " " << f.clauses.size() << "\n";
    for (const auto& c : f.clauses) {
        for (int lit : c.literals) os << lit << " ";
        os << "0\n";
    }
    return os.str();
}

}  // namespace forge
