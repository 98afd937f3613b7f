#include "lieks/formid.hpp"

#include <regex>
#include <stdexcept>

namespace lieks {

namespace {

const std::vector<std::pair<char, int>>& all_types() {
    static const std::vector<std::pair<char, int>> types = [] {
        std::vector<std::pair<char, int>> t;
        for (char c : std::string("ABCDEFG"))
            for (int r = 1; r <= 8; ++r)
                if (supported_type(c, r)) t.emplace_back(c, r);
        return t;
    }();
    return types;
}

}  // namespace

FormId parse_form_id(const std::string& text) {
    static const std::regex id_re(R"(([A-G])([1-9][0-9]*):(inner|outer)(:(k[1-9][0-9]*|compact))?)");
    std::smatch m;
    if (std::regex_match(text, m, id_re)) {
        FormId id{m[1].str()[0], std::stoi(m[2].str()), text};
        if (!supported_type(id.letter, id.rank)) throw std::invalid_argument("unsupported type " + m[1].str() + m[2].str());
        resolve_form(id);
        return id;
    }
    std::vector<FormId> hits;
    for (auto [c, r] : all_types())
        for (const auto& s : enumerate_involutions(c, r))
            if (s.label == text) hits.push_back({c, r, s.id});
    if (hits.size() == 1) return hits[0];
    if (hits.size() > 1) throw std::invalid_argument("ambiguous form label " + text);
    throw std::invalid_argument("unknown form " + text);
}

InvolutionSpec resolve_form(const FormId& id) {
    for (const auto& s : enumerate_involutions(id.letter, id.rank))
        if (s.id == id.descriptor) return s;
    throw std::invalid_argument("no enumerated form with id " + id.descriptor);
}

RealForm build_form(const FormId& id) { return build_real_form(make_model(id.letter, id.rank), resolve_form(id)); }

}  // namespace lieks
