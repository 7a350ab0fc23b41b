#include "codejudge/keywords.hpp"

#include <array>
#include <mutex>
#include <sstream>

namespace codejudge {

const std::set<std::string>& keywords(Lang language) {
    static std::array<std::set<std::string>, 5> cache;
    static std::once_flag once;
    std::call_once(once, [] {
        for (Lang lang : {Lang::python, Lang::java, Lang::cpp, Lang::c, Lang::javascript}) {
            std::istringstream in(keyword_data(lang));
            std::string word;
            auto& set = cache[static_cast<size_t>(lang)];
            while (std::getline(in, word)) {
                while (!word.empty() && (word.back() == '\r' || word.back() == ' '))
                    word.pop_back();
                if (!word.empty()) set.insert(word);
            }
        }
    });
    return cache[static_cast<size_t>(language)];
}

}  // namespace codejudge
