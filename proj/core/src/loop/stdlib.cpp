#include "selk/loop/stdlib.hpp"

#include "selk/loop/embedded.hpp"

namespace selk::loop {

const Library& builtin_library() {
  static const Library lib = [] {
    Library l;
    l.add_source(embedded_source("lib.loop"));
    l.add_source(embedded_source("stdlib.loop"));
    l.add_source(embedded_source("prf.loop"));
    return l;
  }();
  return lib;
}

const std::map<std::string, Program>& stdlib() {
  static const std::map<std::string, Program> registry = [] {
    const Library& lib = builtin_library();
    return std::map<std::string, Program>{
        {"leq", lib.program("LEQ")},
        {"eq", lib.program("EQ")},
        {"bitlen", lib.program("BITLEN")},
        {"pair", lib.program("PAIR")},
        {"unpair-left", lib.program("UNPAIR_L")},
        {"unpair-right", lib.program("UNPAIR_R")},
        {"list-length", lib.program("LIST_LEN")},
        {"list-get", lib.program("LIST_GET")},
        {"byte-slice", lib.program("BYTE_SLICE")},
    };
  }();
  return registry;
}

}  // namespace selk::loop
