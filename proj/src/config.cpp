#include "prg/config.hpp"

#include <cstdlib>
#include <string>

namespace prg {

Caps& caps()
{
    static Caps c = [] {
        Caps v;
        if (const char* env = std::getenv("PROJREF_ORDER_CAP")) {
            try {
                v.enumeration = std::stoull(env);
            } catch (...) {
            }
        }
        return v;
    }();
    return c;
}

} // namespace prg
