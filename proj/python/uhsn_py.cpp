#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "uhsn/cli.hpp"
#include "uhsn/crypto/cipher.hpp"
#include "uhsn/error.hpp"
#include "uhsn/gf/generalized_inverse.hpp"
#include "uhsn/gf/rng.hpp"
#include "uhsn/handshake.hpp"
#include "uhsn/netsim/costs.hpp"
#include "uhsn/netsim/simulator.hpp"

namespace py = pybind11;
using namespace uhsn;

namespace {

using Rows = std::vector<std::vector<std::uint64_t>>;

gf::FieldMatrix to_matrix(const Rows& rows, std::uint32_t q) {
  gf::FieldSpec f(q);
  const std::size_t r = rows.size(), c = rows.empty() ? 0 : rows[0].size();
  gf::FieldMatrix a(f, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw Error(Errc::kMalformed, "ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) a.set(i, j, rows[i][j]);
  }
  return a;
}

Rows to_rows(const gf::FieldMatrix& a) {
  Rows out(a.rows(), std::vector<std::uint64_t>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i][j] = a.at(i, j);
  return out;
}

py::bytes as_bytes(std::span<const std::uint8_t> b) {
  return py::bytes(reinterpret_cast<const char*>(b.data()), b.size());
}

std::vector<std::uint8_t> from_bytes(const py::bytes& b) {
  const std::string s = b;
  return {s.begin(), s.end()};
}

crypto::SymmetricKey key_from(const py::bytes& b) {
  const auto v = from_bytes(b);
  if (v.size() != 32) throw Error(Errc::kInvalidArgument, "key must be 32 bytes");
  crypto::SymmetricKey k;
  std::copy(v.begin(), v.end(), k.bytes.begin());
  return k;
}

crypto::Nonce nonce_from(const py::bytes& b) {
  const auto v = from_bytes(b);
  if (v.size() != 12) throw Error(Errc::kInvalidArgument, "nonce must be 12 bytes");
  crypto::Nonce n;
  std::copy(v.begin(), v.end(), n.begin());
  return n;
}

}  // namespace

PYBIND11_MODULE(uhsn, m) {
  m.doc() = "Pseudoinverse-matrix key agreement for body sensor networks";

  py::register_exception<Error>(m, "UhsnError");

  m.def("mat_mul", [](const Rows& a, const Rows& b, std::uint32_t q) {
    return to_rows(to_matrix(a, q) * to_matrix(b, q));
  }, py::arg("a"), py::arg("b"), py::arg("q"));
  m.def("rank", [](const Rows& a, std::uint32_t q) { return gf::rank(to_matrix(a, q)); }, py::arg("a"),
        py::arg("q"));
  m.def("generalized_inverse", [](const Rows& a, std::uint32_t q) {
    return to_rows(gf::generalized_inverse(to_matrix(a, q)));
  }, py::arg("a"), py::arg("q"));

  m.def("handshake", [](std::uint32_t q, std::size_t m_, std::size_t n, std::size_t k, std::uint64_t seed) {
    handshake::Params p{m_, n, k, gf::FieldSpec(q)};
    p.validate();
    const auto r = handshake::run_handshake(p, {seed, 1}, {seed, 2});
    py::dict d;
    d["agreed"] = r.agreed();
    d["weak"] = r.node_key.weak();
    d["key"] = to_rows(r.node_key.matrix);
    d["sym_key"] = as_bytes(r.node_key.sym_key.bytes);
    d["msg1"] = to_rows(r.msg1.projector);
    d["msg2_p1"] = to_rows(r.msg2.p1);
    d["msg2_p2"] = to_rows(r.msg2.p2);
    d["msg3"] = to_rows(r.msg3.masked);
    return d;
  }, py::arg("q"), py::arg("m"), py::arg("n"), py::arg("k"), py::arg("seed") = 1,
        "Runs one in-memory handshake and returns the key and the public messages.");

  m.def("derive_sym_key", [](const Rows& key, std::uint32_t q, std::uint64_t epoch) {
    return as_bytes(crypto::derive_sym_key(to_matrix(key, q), epoch).bytes);
  }, py::arg("key"), py::arg("q"), py::arg("epoch") = 0);

  m.def("encrypt", [](const py::bytes& key, const py::bytes& nonce, const py::bytes& plaintext, bool auth_tag) {
    const auto ct = crypto::encrypt(key_from(key), nonce_from(nonce), from_bytes(plaintext),
                                    crypto::CipherSuite{"SHA256", auth_tag});
    return as_bytes(ct.encode());
  }, py::arg("key"), py::arg("nonce"), py::arg("plaintext"), py::arg("auth_tag") = true,
        "Returns nonce || tag || body.");
  m.def("decrypt", [](const py::bytes& key, const py::bytes& wire, bool auth_tag) {
    const auto bytes = from_bytes(wire);
    return as_bytes(crypto::decrypt(key_from(key), crypto::Ciphertext::decode(bytes),
                                    crypto::CipherSuite{"SHA256", auth_tag}));
  }, py::arg("key"), py::arg("ciphertext"), py::arg("auth_tag") = true);

  m.def("handshake_cost", [](std::uint32_t q, std::size_t m_, std::size_t n, std::size_t k, std::uint64_t seed) {
    return netsim::handshake_cost_report(m_, n, k, gf::FieldSpec(q), seed).to_json().dump();
  }, py::arg("q"), py::arg("m"), py::arg("n"), py::arg("k"), py::arg("seed") = 1, "JSON cost report.");

  m.def("run_scenario", [](const std::string& json_text) {
    return netsim::run_scenario(netsim::parse_scenario(json_text)).to_json().dump();
  }, py::arg("scenario_json"), "Runs a scenario document and returns the JSON report.");

  m.def("cli", [](const std::vector<std::string>& args) {
    std::vector<std::string> full{"uhsn"};
    full.insert(full.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : full) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Runs the command-line tool in-process; returns (exit_code, stdout, stderr).");
}
