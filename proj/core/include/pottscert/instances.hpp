// Instance construction and serialization: seeded grid generator, stereo and
// segmentation models on images, and the text formats.
//
// Instance format (one token stream, '#' starts a comment to end of line):
//   POTTS n m k
//   n lines of k node costs (node 0 first, labels ascending)
//   m lines "u v w" with 0-based endpoints
// Costs and weights accept integers, decimals (exact), and "p/q" fractions.
//
// Labeling format:
//   LABELING n k
//   n labels, one per line
//
// Grid instances place node r*w + c at row r, column c of an h-by-w grid and
// enumerate edges row-major, right neighbor before down neighbor. That order
// is shared by gen_grid, stereo_build, and seg_weights.
#pragma once

#include "pottscert/model.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace pottscert {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<Edge> grid_edges(int h, int w);

// Random h-by-w grid: integer node costs uniform in [cost_lo, cost_hi] drawn
// node-major label-ascending, then integer weights uniform in [w_lo, w_hi] in
// edge order, all from SplitMix64(seed).
PottsInstance gen_grid(int h, int w, int k, std::uint64_t seed, int cost_lo = 0,
                       int cost_hi = 10, int w_lo = 0, int w_hi = 5);

// Grayscale or RGB image, row-major, channel-interleaved, maxval <= 65535.
struct Image {
  int h = 0, w = 0, channels = 1;
  int maxval = 255;
  std::vector<int> pix;

  int at(int r, int c, int ch = 0) const {
    return pix[(static_cast<size_t>(r) * w + c) * channels + ch];
  }
};

// PGM (P2/P5) and PPM (P3/P6) readers and writers. write_pnm emits the binary
// variant when binary=true, raw maxval preserved.
Image read_pnm(std::istream& in);
Image read_pnm_file(const std::string& path);
void write_pnm(const Image& img, std::ostream& out, bool binary);
void write_pnm_file(const Image& img, const std::string& path, bool binary);

// Stereo model on a rectified pair: label i at pixel (r,c) of the left image
// costs (L(r,c) - R(r,c-i))^2; disparities reaching off-image cost one more
// than the pixel's largest in-range cost. Weights on grid edges are P*s when
// the left-image intensity difference is below T, else s.
PottsInstance stereo_build(const Image& left, const Image& right, int k, int s = 50,
                           int p = 2, int t = 4);

// Contrast-sensitive segmentation weights on grid edges:
//   w_uv = eta1 * exp(-||I(u)-I(v)||^2 / (2 * sum_{pq adjacent} ||I(p)-I(q)||^2)) + eta2
// A constant image degenerates to eta1 + eta2 on every edge. Values are
// computed in double and stored exactly.
std::vector<Rat> seg_weights(const Image& img, const Rat& eta1, const Rat& eta2);

PottsInstance read_instance(std::istream& in);
PottsInstance read_instance_file(const std::string& path);
void write_instance(const PottsInstance& inst, std::ostream& out);
void write_instance_file(const PottsInstance& inst, const std::string& path);

Labeling read_labeling(std::istream& in);
Labeling read_labeling_file(const std::string& path);
void write_labeling(const Labeling& x, int k, std::ostream& out);
void write_labeling_file(const Labeling& x, int k, const std::string& path);

// Label image for inspection: gray value floor(255 * label / (k-1)).
Image labeling_to_image(const Labeling& x, int h, int w, int k);

// FNV-1a over the canonical serialization; identifies instances in reports.
std::uint64_t instance_hash(const PottsInstance& inst);

}  // namespace pottscert
