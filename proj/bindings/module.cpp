#include <pybind11/pybind11.h>
PYBIND11_MODULE(_halfint, m) { m.doc() = "stub"; }
