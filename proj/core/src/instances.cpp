#include "pottscert/instances.hpp"

#include "pottscert/rng.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace pottscert {

namespace {

// Token reader that strips '#' comments. Text formats are whitespace-tolerant;
// the writers below emit the canonical layout.
struct TokenStream {
  std::istream& in;

  bool next(std::string& tok) {
    tok.clear();
    int c;
    while ((c = in.get()) != EOF) {
      if (c == '#') {
        while ((c = in.get()) != EOF && c != '\n') {
        }
        continue;
      }
      if (std::isspace(c)) {
        if (!tok.empty()) return true;
        continue;
      }
      tok += static_cast<char>(c);
    }
    return !tok.empty();
  }

  std::string require(const char* what) {
    std::string tok;
    if (!next(tok)) throw ParseError(std::string("unexpected end of input, expected ") + what);
    return tok;
  }

  long require_int(const char* what) {
    std::string tok = require(what);
    try {
      size_t used = 0;
      long v = std::stol(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      return v;
    } catch (const std::exception&) {
      throw ParseError(std::string("expected integer for ") + what + ", got '" + tok + "'");
    }
  }

  Rat require_rational(const char* what) {
    std::string tok = require(what);
    try {
      return parse_rational(tok);
    } catch (const std::exception&) {
      throw ParseError(std::string("expected number for ") + what + ", got '" + tok + "'");
    }
  }
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  return out;
}

}  // namespace

std::vector<Edge> grid_edges(int h, int w) {
  std::vector<Edge> edges;
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c) {
      int v = r * w + c;
      if (c + 1 < w) edges.push_back({v, v + 1});
      if (r + 1 < h) edges.push_back({v, v + w});
    }
  return edges;
}

PottsInstance gen_grid(int h, int w, int k, std::uint64_t seed, int cost_lo, int cost_hi,
                       int w_lo, int w_hi) {
  if (h <= 0 || w <= 0 || k < 2) throw std::invalid_argument("gen_grid: bad shape");
  if (cost_lo > cost_hi || w_lo > w_hi || w_lo < 0)
    throw std::invalid_argument("gen_grid: bad ranges");
  PottsInstance inst;
  inst.n = h * w;
  inst.k = k;
  inst.edges = grid_edges(h, w);
  SplitMix64 rng(seed);
  inst.node_cost.reserve(static_cast<size_t>(inst.n) * k);
  for (int u = 0; u < inst.n; ++u)
    for (int i = 0; i < k; ++i) inst.node_cost.emplace_back(rng.uniform(cost_lo, cost_hi));
  inst.weight.reserve(inst.edges.size());
  for (size_t e = 0; e < inst.edges.size(); ++e)
    inst.weight.emplace_back(rng.uniform(w_lo, w_hi));
  inst.validate();
  return inst;
}

Image read_pnm(std::istream& in) {
  // Header tokens may carry comments; pixel data after the P5/P6 header is raw.
  auto header_token = [&in]() {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
      if (c == '#') {
        while ((c = in.get()) != EOF && c != '\n') {
        }
        continue;
      }
      if (std::isspace(c)) {
        if (!tok.empty()) return tok;
        continue;
      }
      tok += static_cast<char>(c);
    }
    if (tok.empty()) throw ParseError("truncated image header");
    return tok;
  };

  std::string magic = header_token();
  bool binary;
  int channels;
  if (magic == "P2") binary = false, channels = 1;
  else if (magic == "P5") binary = true, channels = 1;
  else if (magic == "P3") binary = false, channels = 3;
  else if (magic == "P6") binary = true, channels = 3;
  else throw ParseError("unsupported image magic '" + magic + "'");

  Image img;
  img.channels = channels;
  img.w = std::stoi(header_token());
  img.h = std::stoi(header_token());
  img.maxval = std::stoi(header_token());
  if (img.w <= 0 || img.h <= 0 || img.maxval <= 0 || img.maxval > 65535)
    throw ParseError("bad image dimensions or maxval");

  size_t count = static_cast<size_t>(img.w) * img.h * channels;
  img.pix.resize(count);
  if (binary) {
    int bytes = img.maxval > 255 ? 2 : 1;
    std::vector<unsigned char> buf(count * bytes);
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (static_cast<size_t>(in.gcount()) != buf.size()) throw ParseError("truncated image data");
    for (size_t i = 0; i < count; ++i)
      img.pix[i] = bytes == 1 ? buf[i] : (buf[2 * i] << 8) | buf[2 * i + 1];
  } else {
    for (size_t i = 0; i < count; ++i) {
      long v;
      if (!(in >> v)) throw ParseError("truncated image data");
      if (v < 0 || v > img.maxval) throw ParseError("pixel value out of range");
      img.pix[i] = static_cast<int>(v);
    }
  }
  return img;
}

Image read_pnm_file(const std::string& path) {
  auto in = open_input(path);
  return read_pnm(in);
}

void write_pnm(const Image& img, std::ostream& out, bool binary) {
  bool color = img.channels == 3;
  if (!color && img.channels != 1) throw std::invalid_argument("write_pnm: bad channel count");
  out << (color ? (binary ? "P6" : "P3") : (binary ? "P5" : "P2")) << "\n"
      << img.w << " " << img.h << "\n"
      << img.maxval << "\n";
  size_t count = img.pix.size();
  if (binary) {
    int bytes = img.maxval > 255 ? 2 : 1;
    std::vector<unsigned char> buf;
    buf.reserve(count * bytes);
    for (int v : img.pix) {
      if (bytes == 2) buf.push_back(static_cast<unsigned char>(v >> 8));
      buf.push_back(static_cast<unsigned char>(v & 0xff));
    }
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  } else {
    int per_line = color ? img.w * 3 : img.w;
    for (size_t i = 0; i < count; ++i)
      out << img.pix[i] << ((static_cast<int>(i) % per_line == per_line - 1) ? "\n" : " ");
  }
}

void write_pnm_file(const Image& img, const std::string& path, bool binary) {
  auto out = open_output(path);
  write_pnm(img, out, binary);
}

PottsInstance stereo_build(const Image& left, const Image& right, int k, int s, int p, int t) {
  if (left.channels != 1 || right.channels != 1)
    throw std::invalid_argument("stereo_build: grayscale images required");
  if (left.h != right.h || left.w != right.w)
    throw std::invalid_argument("stereo_build: image sizes differ");
  if (k < 2 || s < 0 || p < 0) throw std::invalid_argument("stereo_build: bad parameters");

  PottsInstance inst;
  inst.n = left.h * left.w;
  inst.k = k;
  inst.edges = grid_edges(left.h, left.w);
  inst.node_cost.resize(static_cast<size_t>(inst.n) * k);
  for (int r = 0; r < left.h; ++r)
    for (int c = 0; c < left.w; ++c) {
      int u = r * left.w + c;
      long max_valid = 0;
      for (int i = 0; i < k && i <= c; ++i) {
        long d = left.at(r, c) - right.at(r, c - i);
        max_valid = std::max(max_valid, d * d);
      }
      for (int i = 0; i < k; ++i) {
        if (i <= c) {
          long d = left.at(r, c) - right.at(r, c - i);
          inst.cost(u, i) = Rat(d * d);
        } else {
          inst.cost(u, i) = Rat(max_valid + 1);
        }
      }
    }
  inst.weight.reserve(inst.edges.size());
  for (const Edge& e : inst.edges) {
    int du = std::abs(left.pix[e.u] - left.pix[e.v]);
    inst.weight.emplace_back(du < t ? static_cast<long>(p) * s : s);
  }
  inst.validate();
  return inst;
}

std::vector<Rat> seg_weights(const Image& img, const Rat& eta1, const Rat& eta2) {
  if (eta1 < 0 || eta2 < 0) throw std::invalid_argument("seg_weights: negative eta");
  std::vector<Edge> edges = grid_edges(img.h, img.w);
  auto sq_dist = [&img](const Edge& e) {
    double d2 = 0;
    for (int ch = 0; ch < img.channels; ++ch) {
      double d = img.pix[static_cast<size_t>(e.u) * img.channels + ch] -
                 img.pix[static_cast<size_t>(e.v) * img.channels + ch];
      d2 += d * d;
    }
    return d2;
  };
  double total = 0;
  for (const Edge& e : edges) total += sq_dist(e);

  std::vector<Rat> w;
  w.reserve(edges.size());
  for (const Edge& e : edges) {
    if (total == 0) {
      w.push_back(eta1 + eta2);
    } else {
      double factor = std::exp(-sq_dist(e) / (2 * total));
      w.push_back(eta1 * rat_from_double(factor) + eta2);
    }
  }
  return w;
}

PottsInstance read_instance(std::istream& in) {
  TokenStream ts{in};
  std::string magic = ts.require("POTTS header");
  if (magic != "POTTS") throw ParseError("expected POTTS header, got '" + magic + "'");
  long n = ts.require_int("node count");
  long m = ts.require_int("edge count");
  long k = ts.require_int("label count");
  if (n <= 0 || m < 0 || k < 2) throw ParseError("bad POTTS header counts");

  PottsInstance inst;
  inst.n = static_cast<int>(n);
  inst.k = static_cast<int>(k);
  inst.node_cost.reserve(static_cast<size_t>(n) * k);
  for (long u = 0; u < n; ++u)
    for (long i = 0; i < k; ++i) inst.node_cost.push_back(ts.require_rational("node cost"));
  inst.edges.reserve(m);
  inst.weight.reserve(m);
  for (long e = 0; e < m; ++e) {
    long u = ts.require_int("edge endpoint");
    long v = ts.require_int("edge endpoint");
    inst.edges.push_back({static_cast<int>(u), static_cast<int>(v)});
    inst.weight.push_back(ts.require_rational("edge weight"));
  }
  std::string extra;
  if (ts.next(extra)) throw ParseError("trailing data after instance: '" + extra + "'");
  try {
    inst.validate();
  } catch (const std::invalid_argument& ex) {
    throw ParseError(ex.what());
  }
  return inst;
}

PottsInstance read_instance_file(const std::string& path) {
  auto in = open_input(path);
  return read_instance(in);
}

void write_instance(const PottsInstance& inst, std::ostream& out) {
  out << "POTTS " << inst.n << " " << inst.m() << " " << inst.k << "\n";
  for (int u = 0; u < inst.n; ++u) {
    for (int i = 0; i < inst.k; ++i) out << (i ? " " : "") << format_rational(inst.cost(u, i));
    out << "\n";
  }
  for (int e = 0; e < inst.m(); ++e)
    out << inst.edges[e].u << " " << inst.edges[e].v << " " << format_rational(inst.weight[e])
        << "\n";
}

void write_instance_file(const PottsInstance& inst, const std::string& path) {
  auto out = open_output(path);
  write_instance(inst, out);
}

Labeling read_labeling(std::istream& in) {
  TokenStream ts{in};
  std::string magic = ts.require("LABELING header");
  if (magic != "LABELING") throw ParseError("expected LABELING header, got '" + magic + "'");
  long n = ts.require_int("node count");
  long k = ts.require_int("label count");
  if (n <= 0 || k < 2) throw ParseError("bad LABELING header counts");
  Labeling x(n);
  for (long u = 0; u < n; ++u) {
    long l = ts.require_int("label");
    if (l < 0 || l >= k) throw ParseError("label out of range");
    x[u] = static_cast<int>(l);
  }
  std::string extra;
  if (ts.next(extra)) throw ParseError("trailing data after labeling: '" + extra + "'");
  return x;
}

Labeling read_labeling_file(const std::string& path) {
  auto in = open_input(path);
  return read_labeling(in);
}

void write_labeling(const Labeling& x, int k, std::ostream& out) {
  out << "LABELING " << x.size() << " " << k << "\n";
  for (int l : x) out << l << "\n";
}

void write_labeling_file(const Labeling& x, int k, const std::string& path) {
  auto out = open_output(path);
  write_labeling(x, k, out);
}

Image labeling_to_image(const Labeling& x, int h, int w, int k) {
  if (x.size() != static_cast<size_t>(h) * w || k < 2)
    throw std::invalid_argument("labeling_to_image: shape mismatch");
  Image img;
  img.h = h;
  img.w = w;
  img.channels = 1;
  img.maxval = 255;
  img.pix.resize(x.size());
  for (size_t i = 0; i < x.size(); ++i) img.pix[i] = 255 * x[i] / (k - 1);
  return img;
}

std::uint64_t instance_hash(const PottsInstance& inst) {
  std::ostringstream os;
  write_instance(inst, os);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : os.str()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace pottscert
