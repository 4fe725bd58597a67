#pragma once

#include <atomic>
#include <condition_variable>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "optifab/json_util.hpp"

namespace optifab {

struct PolledRecord {
  uint64_t sequence = 0;
  Json payload;
};

struct PollResult {
  std::vector<PolledRecord> records;
  uint64_t next_cursor = 0;
};

// A live push subscription; destroying the handle stops delivery.
class Subscription {
 public:
  virtual ~Subscription() = default;
  virtual void stop() = 0;
};

using RecordHandler = std::function<void(uint64_t sequence, const Json& payload)>;

// Topic-log pub/sub with cursor replay. Delivery is at-least-once; sequence
// numbers per topic are contiguous from 0.
class BrokerInterface {
 public:
  virtual ~BrokerInterface() = default;

  // Durable append; returns the assigned sequence number.
  virtual uint64_t publish(const std::string& topic, const Json& payload) = 0;

  // Replays records from from_cursor, then delivers live records in order.
  // The handler runs on a channel-owned thread.
  virtual std::unique_ptr<Subscription> subscribe(const std::string& topic, uint64_t from_cursor,
                                                  RecordHandler handler) = 0;

  virtual PollResult poll(const std::string& topic, uint64_t cursor, size_t max_items) = 0;
};

// Embedded broker: per-topic append-only frame log, fsynced before the
// publish call returns. A new instance over the same directory recovers
// every acked record (torn tails are truncated with a warning).
class LocalBroker : public BrokerInterface {
 public:
  explicit LocalBroker(std::string log_dir);
  ~LocalBroker() override;

  uint64_t publish(const std::string& topic, const Json& payload) override;
  std::unique_ptr<Subscription> subscribe(const std::string& topic, uint64_t from_cursor,
                                          RecordHandler handler) override;
  PollResult poll(const std::string& topic, uint64_t cursor, size_t max_items) override;

  uint64_t topic_size(const std::string& topic);

 private:
  struct Topic;
  class LocalSubscription;

  Topic& topic_for(const std::string& name);

  std::string log_dir_;
  std::mutex topics_mu_;
  std::map<std::string, std::unique_ptr<Topic>> topics_;
};

}  // namespace optifab
