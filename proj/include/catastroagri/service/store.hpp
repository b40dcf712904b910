#pragma once

#include "catastroagri/ingest/dataset.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <shared_mutex>
#include <vector>

namespace catastroagri::service {

/// In-memory map of immutable dataset snapshots. Readers share a lock and
/// get a shared_ptr that stays valid after eviction; inserts are exclusive.
/// Ids increase monotonically from 1 and are never reused.
class DatasetStore {
public:
    static constexpr std::size_t kDefaultCapacity = 32;

    explicit DatasetStore(std::size_t capacity = kDefaultCapacity);

    /// Assigns the next id, stores the snapshot and evicts the oldest entries
    /// beyond capacity.
    std::shared_ptr<const ingest::Dataset> insert(ingest::Dataset dataset);

    std::shared_ptr<const ingest::Dataset> find(ingest::DatasetId id) const;
    std::vector<ingest::DatasetId> ids() const;
    std::size_t size() const;
    std::size_t capacity() const { return capacity_; }

private:
    std::size_t capacity_;
    mutable std::shared_mutex mutex_;
    std::map<ingest::DatasetId, std::shared_ptr<const ingest::Dataset>> datasets_;
    ingest::DatasetId next_id_ = 1;
};

}  // namespace catastroagri::service
