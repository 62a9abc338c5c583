#ifndef SEMLAB_FIELDIO_HPP
#define SEMLAB_FIELDIO_HPP

#include <string>

#include "eigensolve.hpp"
#include "grid.hpp"

namespace semlab {

// Binary field dump: magic "SLFD", u32 n, f64 L, f64 h, f64 E, then n*n
// row-major doubles. Everything little-endian.
struct FieldDump {
  Field2D field;
  double h = 0.0;
  double energy = 0.0;
};

void save_field(const std::string &path, const Field2D &f, double h, double energy);
FieldDump load_field(const std::string &path);

void save_eigenpair(const std::string &path, const EigenPair &pair);
EigenPair load_eigenpair(const std::string &path);

}  // namespace semlab

#endif
