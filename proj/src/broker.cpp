#include "optifab/broker.hpp"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "optifab/logging.hpp"
#include "optifab/net.hpp"

namespace optifab {

namespace {

std::string sanitize_topic(const std::string& topic) {
  if (topic.empty()) throw Error("empty topic name");
  std::string out;
  for (char c : topic) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-') out.push_back(c);
    else if (c == '/') out += "__";
    else throw Error("topic may only contain [A-Za-z0-9_/-]: '" + topic + "'");
  }
  return out;
}

}  // namespace

struct LocalBroker::Topic {
  std::mutex mu;
  std::condition_variable cv;
  std::vector<Json> records;
  int fd = -1;

  ~Topic() {
    if (fd >= 0) ::close(fd);
  }
};

class LocalBroker::LocalSubscription : public Subscription {
 public:
  LocalSubscription(Topic& topic, uint64_t from_cursor, RecordHandler handler)
      : topic_(topic), cursor_(from_cursor), handler_(std::move(handler)) {
    worker_ = std::thread([this] { run(); });
  }

  ~LocalSubscription() override { stop(); }

  void stop() override {
    {
      std::lock_guard<std::mutex> lock(topic_.mu);
      stopping_ = true;
    }
    topic_.cv.notify_all();
    if (worker_.joinable()) worker_.join();
  }

 private:
  void run() {
    while (true) {
      std::vector<Json> pending;
      uint64_t base;
      {
        std::unique_lock<std::mutex> lock(topic_.mu);
        topic_.cv.wait(lock, [this] { return stopping_ || cursor_ < topic_.records.size(); });
        if (stopping_) return;
        base = cursor_;
        pending.assign(topic_.records.begin() + static_cast<ptrdiff_t>(cursor_),
                       topic_.records.end());
        cursor_ = topic_.records.size();
      }
      for (size_t i = 0; i < pending.size(); ++i) handler_(base + i, pending[i]);
    }
  }

  Topic& topic_;
  uint64_t cursor_;
  RecordHandler handler_;
  bool stopping_ = false;
  std::thread worker_;
};

LocalBroker::LocalBroker(std::string log_dir) : log_dir_(std::move(log_dir)) {
  std::filesystem::create_directories(log_dir_);
}

LocalBroker::~LocalBroker() = default;

LocalBroker::Topic& LocalBroker::topic_for(const std::string& name) {
  std::lock_guard<std::mutex> lock(topics_mu_);
  auto it = topics_.find(name);
  if (it != topics_.end()) return *it->second;

  auto topic = std::make_unique<Topic>();
  const std::string path = log_dir_ + "/" + sanitize_topic(name) + ".topic";

  // Recover acked records from a previous incarnation; truncate torn tails.
  if (std::filesystem::exists(path)) {
    std::ifstream in(path, std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    in.close();
    const LogScanResult scan = scan_frame_log(bytes);
    for (const auto& frame : scan.frames) topic->records.push_back(frame.at("payload"));
    if (scan.truncated_tail) {
      LOG_WARN("topic %s: truncating torn tail at byte %zu", name.c_str(), scan.valid_bytes);
      std::filesystem::resize_file(path, scan.valid_bytes);
    }
  }

  topic->fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
  if (topic->fd < 0)
    throw IoError("cannot open topic log " + path + ": " + std::strerror(errno));

  auto [inserted, ok] = topics_.emplace(name, std::move(topic));
  (void)ok;
  return *inserted->second;
}

uint64_t LocalBroker::publish(const std::string& topic_name, const Json& payload) {
  Topic& topic = topic_for(topic_name);
  uint64_t sequence;
  {
    std::lock_guard<std::mutex> lock(topic.mu);
    sequence = topic.records.size();
    Json frame;
    frame["sequence"] = sequence;
    frame["payload"] = payload;
    write_frame_fd(topic.fd, frame);
    if (::fsync(topic.fd) != 0)
      throw IoError(std::string("fsync topic log: ") + std::strerror(errno));
    topic.records.push_back(payload);
  }
  topic.cv.notify_all();
  return sequence;
}

std::unique_ptr<Subscription> LocalBroker::subscribe(const std::string& topic_name,
                                                     uint64_t from_cursor, RecordHandler handler) {
  Topic& topic = topic_for(topic_name);
  return std::make_unique<LocalSubscription>(topic, from_cursor, std::move(handler));
}

PollResult LocalBroker::poll(const std::string& topic_name, uint64_t cursor, size_t max_items) {
  Topic& topic = topic_for(topic_name);
  std::lock_guard<std::mutex> lock(topic.mu);
  PollResult out;
  uint64_t at = cursor;
  while (at < topic.records.size() && out.records.size() < max_items) {
    out.records.push_back({at, topic.records[at]});
    ++at;
  }
  out.next_cursor = at;
  return out;
}

uint64_t LocalBroker::topic_size(const std::string& topic_name) {
  Topic& topic = topic_for(topic_name);
  std::lock_guard<std::mutex> lock(topic.mu);
  return topic.records.size();
}

}  // namespace optifab
