#pragma once

#include <string>
#include <vector>

#include "gspace/oracle.hpp"

namespace gspace {

// Ground-truth marked groups. Every oracle is a dedicated exact algorithm
// (integer arithmetic, permutation evaluation, normal forms), never search,
// so these can certify everything else.

MarkedGroup trivial_group();                 // rank 1, oracle constantly true
MarkedGroup integers();                      // Z marked by (1)
MarkedGroup cyclic(long n);                  // Z/n marked by (1)
MarkedGroup free_abelian(int k);             // Z^k, coordinatewise
MarkedGroup free_group(int k);               // F_k, free reduction
MarkedGroup baumslag_solitar(long m);        // BS(1,m) = <a,b | bab⁻¹ = a^m>
MarkedGroup dihedral(long n);                // D_n of order 2n, (rotation, flip)
MarkedGroup symmetric(int n);                // S_n by ((1 2), (1 2 ... n))
MarkedGroup alternating(int n);              // A_n by ((1 2 3), cycle)
MarkedGroup heisenberg();                    // H_3(Z) by (a, b)
MarkedGroup lamplighter();                   // (Z/2 wr Z) by (lamp, shift)

// Lookup by name and integer parameters: "Z", "Z^k", "Z/n", "F k",
// "BS(1,m)", "D n", "S n", "A n", "Heis", "Lamp", "trivial".
MarkedGroup catalog(const std::string& name, const std::vector<long>& params);

// Hand-labelled truth for the decidable property checks.
struct CatalogEntry {
  MarkedGroup group;
  bool abelian;
  int nilpotency_class;  // -1 when not nilpotent
  long order;            // -1 when infinite
};

// The full test catalog (25+ instances).
std::vector<CatalogEntry> catalog_instances();

// --- named sequences ---------------------------------------------------------

// (Z/1, Z/2, Z/3, ...) with regulator m -> m + 1; converges to Z.
GroupSequence cyclic_sequence();

// 2-markings of Z by the pairs (1, k), k = 1, 2, ...; converges to the only
// 2-marking of Z^2.
GroupSequence z_markings_sequence();

GroupSequence constant_sequence(const MarkedGroup& g);

GroupSequence named_sequence(const std::string& name);

}  // namespace gspace
