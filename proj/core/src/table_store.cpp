#include "parahoric/table_store.hpp"

#include <filesystem>
#include <utility>

#include "parahoric/cache.hpp"
#include "parahoric/dixon.hpp"
#include "parahoric/errors.hpp"

namespace parahoric {

TableStore::TableStore(std::string cache_dir, long long max_elements)
    : cache_dir_(std::move(cache_dir)), max_elements_(max_elements) {
    if (max_elements_ <= 0) throw DomainError("table store: max_elements must be positive");
    if (!cache_dir_.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(cache_dir_, ec);
        if (ec) throw ResourceError("table store: cannot create cache directory " + cache_dir_);
    }
}

std::shared_ptr<const GroupModel> TableStore::model_locked(Modulus m, SubgroupTag tag, int param) {
    const std::string key = model_key(m, tag, param);
    auto it = models_.find(key);
    if (it != models_.end()) return it->second;
    auto built = GroupModel::build(m, tag, param, max_elements_);
    models_.emplace(key, built);
    return built;
}

std::shared_ptr<const GroupModel> TableStore::model(Modulus m, SubgroupTag tag, int param) {
    std::lock_guard<std::mutex> lock(mu_);
    return model_locked(m, tag, param);
}

std::shared_ptr<const CharacterTable> TableStore::table(Modulus m, SubgroupTag tag, int param) {
    std::lock_guard<std::mutex> lock(mu_);
    const std::string key = model_key(m, tag, param);
    auto it = tables_.find(key);
    if (it != tables_.end()) return it->second;

    auto gp = model_locked(m, tag, param);
    std::shared_ptr<const CharacterTable> built;
    std::string path;
    if (!cache_dir_.empty()) {
        path = cache_dir_ + "/" + table_cache_filename(*gp);
        CharacterTable loaded;
        if (load_character_table_file(path, gp, loaded))
            built = std::make_shared<const CharacterTable>(std::move(loaded));
    }
    if (!built) {
        built = std::make_shared<const CharacterTable>(build_character_table(gp));
        if (!path.empty()) save_character_table_file(path, *built);
    }
    tables_.emplace(key, built);
    return built;
}

}  // namespace parahoric
