#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "parahoric/class_function.hpp"

namespace parahoric {

/* Keyed store for group models and character tables. Models and tables are
 * immutable once built and shared by reference; construction is serialized
 * behind one mutex so concurrent checks can share a store safely. When a
 * cache directory is set, tables are loaded from and saved to disk (one file
 * per table, validated against the model and the code version on load).
 */
class TableStore {
public:
    explicit TableStore(std::string cache_dir = "", long long max_elements = kDefaultMaxElements);

    std::shared_ptr<const GroupModel> model(Modulus m, SubgroupTag tag, int param = 0);
    std::shared_ptr<const CharacterTable> table(Modulus m, SubgroupTag tag, int param = 0);

    const std::string& cache_dir() const { return cache_dir_; }
    long long max_elements() const { return max_elements_; }

    static constexpr long long kDefaultMaxElements = 1000000;

private:
    std::shared_ptr<const GroupModel> model_locked(Modulus m, SubgroupTag tag, int param);

    std::mutex mu_;
    std::map<std::string, std::shared_ptr<const GroupModel>> models_;
    std::map<std::string, std::shared_ptr<const CharacterTable>> tables_;
    std::string cache_dir_;
    long long max_elements_;
};

}  // namespace parahoric
