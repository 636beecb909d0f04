#include "curricula/selfplay/opponent_store.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <nlohmann/json.hpp>

#include "curricula/errors.hpp"

namespace curricula {

using nlohmann::json;

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1)
    throw Error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

OpponentStore::OpponentStore(std::filesystem::path dir, int memory)
    : dir_(std::move(dir)), memory_(memory) {
  if (memory_ < 1) throw ConfigError("win-rate memory must be >= 1");
  if (!dir_.empty()) std::filesystem::create_directories(dir_);
}

int OpponentStore::add(std::string snapshot, std::int64_t created_step) {
  std::unique_lock lock(mutex_);
  OpponentRecord rec;
  rec.opponent_id = static_cast<int>(records_.size());
  rec.snapshot = std::move(snapshot);
  rec.created_step = created_step;
  if (!dir_.empty()) persist(rec);
  records_.push_back(std::move(rec));
  return records_.back().opponent_id;
}

void OpponentStore::persist(const OpponentRecord& rec) {
  const std::string name = sha256_hex(rec.snapshot) + ".bin";
  const auto path = dir_ / name;
  if (!std::filesystem::exists(path)) {
    const auto tmp = dir_ / (name + ".tmp");
    {
      std::ofstream out(tmp, std::ios::binary);
      out.write(rec.snapshot.data(),
                static_cast<std::streamsize>(rec.snapshot.size()));
      if (!out) throw Error("failed to write snapshot file");
    }
    std::filesystem::rename(tmp, path);
  }

  json manifest;
  const auto manifest_path = dir_ / "manifest.json";
  if (std::filesystem::exists(manifest_path)) {
    std::ifstream in(manifest_path);
    in >> manifest;
  } else {
    manifest["opponents"] = json::array();
  }
  manifest["opponents"].push_back({{"id", rec.opponent_id},
                                   {"file", name},
                                   {"created_step", rec.created_step}});
  const auto tmp_manifest = dir_ / "manifest.json.tmp";
  {
    std::ofstream out(tmp_manifest);
    out << manifest.dump(2) << "\n";
    if (!out) throw Error("failed to write manifest");
  }
  std::filesystem::rename(tmp_manifest, manifest_path);
}

std::string OpponentStore::snapshot(int opponent_id) const {
  std::shared_lock lock(mutex_);
  check_id(opponent_id);
  return records_[static_cast<std::size_t>(opponent_id)].snapshot;
}

void OpponentStore::record_outcome(int opponent_id, double learner_return) {
  std::unique_lock lock(mutex_);
  check_id(opponent_id);
  auto& outcomes = records_[static_cast<std::size_t>(opponent_id)].outcomes;
  const double outcome =
      learner_return > 0.0 ? 1.0 : (learner_return < 0.0 ? 0.0 : 0.5);
  outcomes.push_back(outcome);
  if (outcomes.size() > static_cast<std::size_t>(memory_)) outcomes.pop_front();
}

double OpponentStore::winrate(int opponent_id, double smoothing) const {
  std::shared_lock lock(mutex_);
  check_id(opponent_id);
  const auto& outcomes =
      records_[static_cast<std::size_t>(opponent_id)].outcomes;
  double wins = 0.0;
  for (double o : outcomes) wins += o;
  return (wins + smoothing) /
         (static_cast<double>(outcomes.size()) + 2.0 * smoothing);
}

int OpponentStore::size() const {
  std::shared_lock lock(mutex_);
  return static_cast<int>(records_.size());
}

std::int64_t OpponentStore::games(int opponent_id) const {
  std::shared_lock lock(mutex_);
  check_id(opponent_id);
  return static_cast<std::int64_t>(
      records_[static_cast<std::size_t>(opponent_id)].outcomes.size());
}

void OpponentStore::check_id(int opponent_id) const {
  if (opponent_id < 0 ||
      opponent_id >= static_cast<int>(records_.size()))
    throw UnknownOpponentError("unknown opponent id " +
                               std::to_string(opponent_id));
}

std::shared_ptr<OpponentStore> OpponentStore::open(
    const std::filesystem::path& dir, int memory) {
  auto store = std::make_shared<OpponentStore>(dir, memory);
  const auto manifest_path = dir / "manifest.json";
  if (!std::filesystem::exists(manifest_path)) return store;
  json manifest;
  {
    std::ifstream in(manifest_path);
    in >> manifest;
  }
  for (const auto& entry : manifest.at("opponents")) {
    const auto path = dir / entry.at("file").get<std::string>();
    std::ifstream in(path, std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
    OpponentRecord rec;
    rec.opponent_id = entry.at("id").get<int>();
    rec.snapshot = std::move(bytes);
    rec.created_step = entry.value("created_step", std::int64_t{0});
    if (rec.opponent_id != static_cast<int>(store->records_.size()))
      throw Error("manifest ids are not dense");
    store->records_.push_back(std::move(rec));
  }
  return store;
}

}  // namespace curricula
