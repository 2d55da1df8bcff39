#include "gasym/group_io.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace gasym {

namespace {

using nlohmann::json;

constexpr std::uintmax_t kMaxFileBytes = 1 << 20;
constexpr std::size_t kMaxOrder = 64;

}  // namespace

GroupPtr load_group(const std::string& path) {
  std::error_code ec;
  const auto size = std::filesystem::file_size(path, ec);
  if (ec) throw ParseError("load_group: cannot stat '" + path + "': " + ec.message());
  if (size > kMaxFileBytes) {
    throw ParseError("load_group: file exceeds the 1 MiB limit");
  }
  std::ifstream in(path);
  if (!in) throw ParseError("load_group: cannot open '" + path + "'");

  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(std::string("load_group: malformed JSON: ") + e.what());
  }

  auto group = std::make_shared<GroupWithIrreps>();
  try {
    group->name = doc.at("name").get<std::string>();
    const auto order = doc.at("order").get<long long>();
    if (order < 1) throw ParseError("load_group: order must be positive");
    if (static_cast<std::size_t>(order) > kMaxOrder) {
      throw ValidationError("load_group: order above 64 is unsupported");
    }
    group->order = static_cast<std::size_t>(order);
    const auto identity = doc.at("identity").get<long long>();
    if (identity < 0 || static_cast<std::size_t>(identity) >= group->order) {
      throw ParseError("load_group: identity index out of range");
    }
    group->identity_index = static_cast<std::size_t>(identity);

    const auto& cayley = doc.at("cayley");
    if (!cayley.is_array() || cayley.size() != group->order) {
      throw ParseError("load_group: cayley must be an order x order array");
    }
    group->cayley.resize(group->order);
    for (std::size_t i = 0; i < group->order; ++i) {
      const auto& row = cayley.at(i);
      if (!row.is_array() || row.size() != group->order) {
        throw ParseError("load_group: cayley row has wrong length");
      }
      group->cayley[i].resize(group->order);
      for (std::size_t j = 0; j < group->order; ++j) {
        const auto v = row.at(j).get<long long>();
        if (v < 0 || static_cast<std::size_t>(v) >= group->order) {
          throw ParseError("load_group: cayley entry out of range");
        }
        group->cayley[i][j] = static_cast<std::size_t>(v);
      }
    }

    const auto& irreps = doc.at("irreps");
    if (!irreps.is_array() || irreps.empty()) {
      throw ParseError("load_group: irreps must be a non-empty array");
    }
    for (const auto& jir : irreps) {
      Irrep ir;
      ir.label = jir.at("label").get<int>();
      const auto dim = jir.at("dim").get<long long>();
      if (dim < 1 || dim > static_cast<long long>(kMaxOrder)) {
        throw ParseError("load_group: irrep dim out of range");
      }
      ir.dim = static_cast<std::size_t>(dim);
      const auto& mats = jir.at("matrices");
      if (!mats.is_array() || mats.size() != group->order) {
        throw ParseError("load_group: irrep must carry one matrix per element");
      }
      for (const auto& jm : mats) {
        if (!jm.is_array() || jm.size() != ir.dim) {
          throw ParseError("load_group: irrep matrix has wrong row count");
        }
        CMatrix m(ir.dim, ir.dim);
        for (std::size_t i = 0; i < ir.dim; ++i) {
          const auto& jrow = jm.at(i);
          if (!jrow.is_array() || jrow.size() != ir.dim) {
            throw ParseError("load_group: irrep matrix row has wrong length");
          }
          for (std::size_t j = 0; j < ir.dim; ++j) {
            const auto& entry = jrow.at(j);
            if (!entry.is_array() || entry.size() != 2) {
              throw ParseError("load_group: matrix entry must be [re, im]");
            }
            m(i, j) = cdouble(entry.at(0).get<double>(), entry.at(1).get<double>());
          }
        }
        if (!m.is_finite()) throw ParseError("load_group: non-finite matrix entry");
        ir.matrices.push_back(std::move(m));
      }
      group->irreps.push_back(std::move(ir));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("load_group: schema violation: ") + e.what());
  }

  // Inverses follow from the table once it is a Latin square with identity.
  group->inverses.assign(group->order, 0);
  for (std::size_t a = 0; a < group->order; ++a) {
    bool found = false;
    for (std::size_t b = 0; b < group->order; ++b) {
      if (group->cayley[a][b] == group->identity_index &&
          group->cayley[b][a] == group->identity_index) {
        group->inverses[a] = b;
        found = true;
        break;
      }
    }
    if (!found) throw ValidationError("load_group: element without a two-sided inverse");
  }
  for (std::size_t a = 0; a < group->order; ++a) {
    group->element_names.push_back("g" + std::to_string(a));
  }
  group->conjugacy_classes = conjugacy_classes_from_table(group->cayley, group->inverses);

  validate_group(*group);
  return group;
}

void save_group(const std::string& path, const GroupWithIrreps& group) {
  json doc;
  doc["name"] = group.name;
  doc["order"] = group.order;
  doc["identity"] = group.identity_index;
  doc["cayley"] = group.cayley;
  json jirreps = json::array();
  for (const auto& ir : group.irreps) {
    json jm = json::array();
    for (const auto& m : ir.matrices) {
      json rows = json::array();
      for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
          row.push_back({m(i, j).real(), m(i, j).imag()});
        }
        rows.push_back(std::move(row));
      }
      jm.push_back(std::move(rows));
    }
    jirreps.push_back({{"label", ir.label}, {"dim", ir.dim}, {"matrices", std::move(jm)}});
  }
  doc["irreps"] = std::move(jirreps);

  std::ofstream out(path);
  if (!out) throw InvalidInput("save_group: cannot open '" + path + "' for writing");
  out << doc.dump(1) << '\n';
}

}  // namespace gasym
