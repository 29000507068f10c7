#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

namespace tutor::service {

struct TaskDescription {
    std::string task_id;
    std::string title;
    std::string statement;
    std::string topic;

    bool operator==(const TaskDescription&) const = default;
};

nlohmann::json to_json(const TaskDescription& t);

// Parses a JSON array of tasks; ids must be unique and statements non-empty.
std::vector<TaskDescription> parse_tasks(const nlohmann::json& doc);

// Tasks ordered by task_id. Reload swaps the whole set atomically.
class TaskCatalog {
public:
    TaskCatalog() = default;
    explicit TaskCatalog(std::vector<TaskDescription> tasks);
    static std::shared_ptr<TaskCatalog> from_file(const std::string& path);

    std::vector<TaskDescription> list() const;
    TaskDescription get(const std::string& task_id) const;  // throws UnknownTask
    void replace(std::vector<TaskDescription> tasks);
    void reload();  // re-reads the file this catalog was loaded from

private:
    using Map = std::map<std::string, TaskDescription>;
    static std::shared_ptr<const Map> index(std::vector<TaskDescription> tasks);

    mutable std::mutex mu_;
    std::shared_ptr<const Map> tasks_ = std::make_shared<const Map>();
    std::string path_;
};

}  // namespace tutor::service
