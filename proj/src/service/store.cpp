#include "catastroagri/service/store.hpp"

#include <algorithm>
#include <mutex>

namespace catastroagri::service {

DatasetStore::DatasetStore(std::size_t capacity) : capacity_(std::max<std::size_t>(capacity, 1)) {}

std::shared_ptr<const ingest::Dataset> DatasetStore::insert(ingest::Dataset dataset) {
    std::unique_lock lock(mutex_);
    dataset.id = next_id_++;
    auto snapshot = std::make_shared<const ingest::Dataset>(std::move(dataset));
    datasets_.emplace(snapshot->id, snapshot);
    while (datasets_.size() > capacity_) datasets_.erase(datasets_.begin());
    return snapshot;
}

std::shared_ptr<const ingest::Dataset> DatasetStore::find(ingest::DatasetId id) const {
    std::shared_lock lock(mutex_);
    const auto it = datasets_.find(id);
    return it == datasets_.end() ? nullptr : it->second;
}

std::vector<ingest::DatasetId> DatasetStore::ids() const {
    std::shared_lock lock(mutex_);
    std::vector<ingest::DatasetId> out;
    out.reserve(datasets_.size());
    for (const auto& [id, ds] : datasets_) out.push_back(id);
    return out;
}

std::size_t DatasetStore::size() const {
    std::shared_lock lock(mutex_);
    return datasets_.size();
}

}  // namespace catastroagri::service
