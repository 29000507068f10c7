#include "service/tasks.hpp"

#include <set>

#include "common/error.hpp"
#include "common/text.hpp"

namespace tutor::service {

using nlohmann::json;

json to_json(const TaskDescription& t) {
    return {{"task_id", t.task_id}, {"title", t.title}, {"statement", t.statement}, {"topic", t.topic}};
}

std::vector<TaskDescription> parse_tasks(const json& doc) {
    if (!doc.is_array()) throw Error(ErrorCode::InvalidArgument, "task file must contain a JSON array");
    std::vector<TaskDescription> tasks;
    std::set<std::string> seen;
    for (const auto& item : doc) {
        try {
            TaskDescription t;
            t.task_id = item.at("task_id").get<std::string>();
            t.title = item.value("title", t.task_id);
            t.statement = item.at("statement").get<std::string>();
            t.topic = item.value("topic", "");
            if (t.task_id.empty()) throw Error(ErrorCode::InvalidArgument, "task_id must not be empty");
            if (text::is_blank(t.statement))
                throw Error(ErrorCode::InvalidArgument, "task " + t.task_id + " has an empty statement");
            if (!seen.insert(t.task_id).second) throw Error(ErrorCode::InvalidArgument, "duplicate task_id " + t.task_id);
            tasks.push_back(std::move(t));
        } catch (const json::exception& e) {
            throw Error(ErrorCode::InvalidArgument, std::string("bad task entry: ") + e.what());
        }
    }
    return tasks;
}

std::shared_ptr<const TaskCatalog::Map> TaskCatalog::index(std::vector<TaskDescription> tasks) {
    auto map = std::make_shared<Map>();
    for (auto& t : tasks) {
        auto id = t.task_id;
        if (!map->emplace(id, std::move(t)).second)
            throw Error(ErrorCode::InvalidArgument, "duplicate task_id " + id);
    }
    return map;
}

TaskCatalog::TaskCatalog(std::vector<TaskDescription> tasks) : tasks_(index(std::move(tasks))) {}

std::shared_ptr<TaskCatalog> TaskCatalog::from_file(const std::string& path) {
    auto catalog = std::make_shared<TaskCatalog>();
    catalog->path_ = path;
    catalog->reload();
    return catalog;
}

std::vector<TaskDescription> TaskCatalog::list() const {
    std::shared_ptr<const Map> snapshot;
    {
        std::lock_guard lock(mu_);
        snapshot = tasks_;
    }
    std::vector<TaskDescription> out;
    out.reserve(snapshot->size());
    for (const auto& [id, t] : *snapshot) out.push_back(t);
    return out;
}

TaskDescription TaskCatalog::get(const std::string& task_id) const {
    std::lock_guard lock(mu_);
    auto it = tasks_->find(task_id);
    if (it == tasks_->end()) throw Error(ErrorCode::UnknownTask, "unknown task: " + task_id);
    return it->second;
}

void TaskCatalog::replace(std::vector<TaskDescription> tasks) {
    auto next = index(std::move(tasks));
    std::lock_guard lock(mu_);
    tasks_ = std::move(next);
}

void TaskCatalog::reload() {
    if (path_.empty()) return;
    json doc = json::parse(text::read_file(path_), nullptr, false);
    if (doc.is_discarded()) throw Error(ErrorCode::InvalidArgument, "task file is not valid JSON: " + path_);
    replace(parse_tasks(doc));
}

}  // namespace tutor::service
