#pragma once

#include <memory>
#include <string>

#include "althull/codes.hpp"

namespace althull {

// Key files: header "ALTKEY v1", the field descriptor, a params line
// "q m r n seed", then named sections "<name> <rows> <cols>" followed by
// <rows> lines of <cols> space-separated elements; each element is its
// little-endian base-p digit tuple, digits comma separated.
//   secret files:    x, y, P (and gamma for Goppa instances)
//   public files:    Hpub
//   recovered files: x, y

struct LoadedKey {
  std::shared_ptr<FieldTower> tower;
  AlternantParams params;
  std::optional<Vec> x, y;
  std::optional<Matrix> P;
  std::optional<Matrix> H_pub;
  std::optional<Polynomial> gamma;

  bool has_secret() const { return x && y && P; }
  bool has_support() const { return x && y; }
};

void write_secret_key(const std::string& path, const FieldTower& t,
                      const AlternantInstance& inst);
void write_public_key(const std::string& path, const FieldTower& t,
                      const AlternantInstance& inst);
void write_recovered_key(const std::string& path, const FieldTower& t,
                         const AlternantParams& params, const GrsSpec& spec);

// throws ParseError on malformed input, Error when the file cannot be read
LoadedKey load_key(const std::string& path);

// rebuild H_sec and H_pub from a loaded secret key
AlternantInstance instance_from_secret(const FieldTower& t, const LoadedKey& k);

}  // namespace althull
