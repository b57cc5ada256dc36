#include "gangfreq/task_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gangfreq/errors.hpp"
#include "gangfreq/format.hpp"

namespace gangfreq {

namespace {

using nlohmann::json;

}  // namespace

TaskSystem load_tasks(std::istream& in) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("task file: ") + e.what());
    }

    if (!doc.is_object() || !doc.contains("tasks") || !doc["tasks"].is_array())
        throw ValidationError("task file: top-level object with a 'tasks' array required");
    const json& arr = doc["tasks"];
    if (arr.empty()) throw ValidationError("task file: task list must be non-empty");

    std::vector<Task> tasks;
    tasks.reserve(arr.size());
    std::size_t speedup_len = 0;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const json& t = arr[i];
        std::ostringstream where;
        where << "task file: task " << i + 1 << ": ";
        if (!t.is_object()) throw ValidationError(where.str() + "must be an object");
        for (const auto& [key, value] : t.items()) {
            (void)value;
            if (key != "e" && key != "p" && key != "speedup")
                throw ValidationError(where.str() + "unknown key '" + key + "'");
        }
        if (!t.contains("e") || !t["e"].is_number())
            throw ValidationError(where.str() + "'e' must be a number");
        if (!t.contains("p") || !t["p"].is_number_integer())
            throw ValidationError(where.str() + "'p' must be an integer");
        if (!t.contains("speedup") || !t["speedup"].is_array() || t["speedup"].empty())
            throw ValidationError(where.str() + "'speedup' must be a non-empty array");

        std::vector<double> gammas;
        gammas.reserve(t["speedup"].size());
        for (const json& g : t["speedup"]) {
            if (!g.is_number())
                throw ValidationError(where.str() + "speedup entries must be numbers");
            gammas.push_back(g.get<double>());
        }
        if (i == 0)
            speedup_len = gammas.size();
        else if (gammas.size() != speedup_len)
            throw ValidationError(where.str() + "speedup lists must all have equal length");

        tasks.push_back(Task{t["e"].get<double>(), t["p"].get<std::int64_t>(),
                             SpeedupVector::validate(std::move(gammas))});
    }
    return TaskSystem::create(std::move(tasks));
}

TaskSystem load_tasks_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open task file '" + path + "'");
    return load_tasks(in);
}

void save_tasks(const TaskSystem& system, std::ostream& out) {
    out << "{\n  \"tasks\": [\n";
    for (int i = 0; i < system.size(); ++i) {
        const Task& t = system.task(i);
        out << "    {\"e\": " << format_real(t.exec_time) << ", \"p\": " << t.period
            << ", \"speedup\": [";
        const std::vector<double>& g = t.speedup.values();
        for (std::size_t k = 0; k < g.size(); ++k) {
            if (k > 0) out << ", ";
            out << format_real(g[k]);
        }
        out << "]}";
        if (i + 1 < system.size()) out << ',';
        out << '\n';
    }
    out << "  ]\n}\n";
}

void save_tasks_file(const TaskSystem& system, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    save_tasks(system, out);
    if (!out) throw IoError("failed writing '" + path + "'");
}

std::string save_tasks_string(const TaskSystem& system) {
    std::ostringstream out;
    save_tasks(system, out);
    return out.str();
}

}  // namespace gangfreq
