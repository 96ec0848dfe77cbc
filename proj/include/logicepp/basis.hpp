#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace logicepp {

/// Circular polarization of a photonic qubit.
enum class Polarization : std::uint8_t { L = 0, R = 1 };

/// Ground state of a three-level atom (the excited level is never populated).
enum class AtomState : std::uint8_t { gL = 0, gR = 1 };

constexpr char to_char(Polarization p) { return p == Polarization::L ? 'L' : 'R'; }

constexpr std::string_view to_token(AtomState a) {
  return a == AtomState::gL ? "gL" : "gR";
}

/// Number of photon and atom slots of a register. Slot indices are stable for
/// the lifetime of a state; measured slots stay in place as collapsed slots.
struct RegisterShape {
  int photons = 0;
  int atoms = 0;

  friend bool operator==(const RegisterShape&, const RegisterShape&) = default;
};

/// A computational-basis label: one polarization per photon slot plus one
/// ground state per atom slot, packed as bit masks (bit i set = R / gR).
/// Supports up to 64 slots of each kind, far beyond any protocol instance.
struct BasisKet {
  std::uint64_t photon_bits = 0;
  std::uint64_t atom_bits = 0;

  Polarization photon(int slot) const {
    return static_cast<Polarization>((photon_bits >> slot) & 1u);
  }
  AtomState atom(int slot) const {
    return static_cast<AtomState>((atom_bits >> slot) & 1u);
  }

  BasisKet with_photon(int slot, Polarization p) const {
    BasisKet k = *this;
    const std::uint64_t mask = std::uint64_t{1} << slot;
    k.photon_bits = (k.photon_bits & ~mask) |
                    (p == Polarization::R ? mask : std::uint64_t{0});
    return k;
  }
  BasisKet with_atom(int slot, AtomState a) const {
    BasisKet k = *this;
    const std::uint64_t mask = std::uint64_t{1} << slot;
    k.atom_bits =
        (k.atom_bits & ~mask) | (a == AtomState::gR ? mask : std::uint64_t{0});
    return k;
  }

  auto operator<=>(const BasisKet&) const = default;
};

/// Renders a ket as "LLRR|gLgR" (photons, then atom tokens).
std::string to_string(const BasisKet& ket, const RegisterShape& shape);

/// Parses photon letters ("LLRR") and atom tokens ("gLgR"). Throws
/// std::invalid_argument on malformed input.
BasisKet parse_basis(std::string_view photons, std::string_view atoms);

/// Shape implied by the strings accepted by parse_basis.
RegisterShape parse_shape(std::string_view photons, std::string_view atoms);

}  // namespace logicepp
