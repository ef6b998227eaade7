#ifndef PATHLAB_NUMIO_HPP
#define PATHLAB_NUMIO_HPP

#include <cstdio>
#include <string>

namespace pathlab {

// 17 significant digits: the shortest fixed precision that round-trips every
// finite IEEE-754 double through decimal text.
inline std::string fmt_g17(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

} // namespace pathlab

#endif
