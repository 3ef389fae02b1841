#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "boa/ingest.hpp"
#include "boa/store.hpp"
#include "boa/types.hpp"

namespace boa {

struct RankedEntry {
  std::string video_id;
  double distance = 0;
};

// Full ordering of one query's candidates, ascending by distance, ties by id.
struct RankedList {
  std::string query_id;
  std::vector<RankedEntry> entries;
};

RankedList rank(const std::string& query_id, const BoaVector& query,
                const std::vector<std::pair<std::string, BoaVector>>& candidates);

// One ranked list per query of the event, over exactly that event's database.
std::vector<RankedList> query_event(const EventSpec& event, const BoaStore& store,
                                    int workers = 1);

// Dump format: query_id<TAB>rank<TAB>video_id<TAB>distance, distance with 17
// significant digits. Rank is 1-based.
void write_ranked_lists(const std::vector<RankedList>& lists, std::ostream& out);
std::vector<RankedList> read_ranked_lists(std::istream& in, const std::string& origin);

}  // namespace boa
