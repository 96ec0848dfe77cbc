#include "logicepp/basis.hpp"

#include <stdexcept>

namespace logicepp {

std::string to_string(const BasisKet& ket, const RegisterShape& shape) {
  std::string out;
  out.reserve(static_cast<std::size_t>(shape.photons + 2 * shape.atoms) + 1);
  for (int i = 0; i < shape.photons; ++i) out.push_back(to_char(ket.photon(i)));
  out.push_back('|');
  for (int i = 0; i < shape.atoms; ++i) out.append(to_token(ket.atom(i)));
  return out;
}

RegisterShape parse_shape(std::string_view photons, std::string_view atoms) {
  if (atoms.size() % 2 != 0)
    throw std::invalid_argument("atom string must be gL/gR tokens");
  return RegisterShape{static_cast<int>(photons.size()),
                       static_cast<int>(atoms.size() / 2)};
}

BasisKet parse_basis(std::string_view photons, std::string_view atoms) {
  const RegisterShape shape = parse_shape(photons, atoms);
  if (shape.photons > 64 || shape.atoms > 64)
    throw std::invalid_argument("register too large");
  BasisKet ket;
  for (int i = 0; i < shape.photons; ++i) {
    switch (photons[i]) {
      case 'L': break;
      case 'R': ket.photon_bits |= std::uint64_t{1} << i; break;
      default: throw std::invalid_argument("photon letter must be L or R");
    }
  }
  for (int i = 0; i < shape.atoms; ++i) {
    const std::string_view token = atoms.substr(2 * static_cast<std::size_t>(i), 2);
    if (token == "gR")
      ket.atom_bits |= std::uint64_t{1} << i;
    else if (token != "gL")
      throw std::invalid_argument("atom token must be gL or gR");
  }
  return ket;
}

}  // namespace logicepp
