// Copyright 2026 The rqcdesign Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rqcdesign/service.h"

#include <condition_variable>
#include <deque>
#include <map>
#include <mutex>
#include <thread>

#include "httplib.h"
#include "rqcdesign/error.h"
#include "rqcdesign/manifest.h"

namespace rqcdesign {

const char *job_state_name(JobState s) {
    switch (s) {
        case JobState::queued:
            return "queued";
        case JobState::running:
            return "running";
        case JobState::done:
            return "done";
        case JobState::failed:
            return "failed";
    }
    return "?";
}

Json job_json(const JobRecord &job) {
    return Json{{"id", job.id},
                {"state", job_state_name(job.state)},
                {"progress", job.progress},
                {"config", job.config},
                {"result", job.state == JobState::done ? Json("/api/search/" + job.id + "/result") : Json()},
                {"error", job.error.empty() ? Json() : Json(job.error)}};
}

namespace {

struct Job {
    JobRecord record;
    SearchRequest request;
    std::optional<Json> result;
};

struct Failure {
    int status;
    std::string kind;
};

// Maps an in-flight exception to an HTTP status.
Failure classify() {
    try {
        throw;
    } catch (const NoFeasibleCut &) {
        return {422, "infeasible"};
    } catch (const DegenerateBipartition &) {
        return {422, "degenerate"};
    } catch (const CapExceeded &) {
        return {400, "cap"};
    } catch (const ValidationError &) {
        return {400, "validation"};
    } catch (const nlohmann::json::exception &) {
        return {400, "validation"};
    } catch (...) {
        return {500, "internal"};
    }
}

void reply(httplib::Response &res, int status, const Json &body) {
    res.status = status;
    res.set_content(body.dump(2) + "\n", "application/json");
}

void reply_error(httplib::Response &res, int status, const std::string &kind, const std::string &msg) {
    reply(res, status, Json{{"error", msg}, {"kind", kind}});
}

template <typename F>
void handle(httplib::Response &res, F &&f) {
    try {
        f();
    } catch (const std::exception &e) {
        Failure fail = classify();
        reply_error(res, fail.status, fail.kind, e.what());
    }
}

}  // namespace

struct Service::Impl {
    ServiceConfig cfg;
    httplib::Server server;
    std::thread server_thread;
    int bound_port = -1;

    std::mutex mu;
    std::condition_variable cv;
    std::map<std::string, std::shared_ptr<Job>> jobs;
    std::deque<std::shared_ptr<Job>> queue;
    uint64_t next_id = 1;
    bool stopping = false;
    std::vector<std::thread> workers;

    explicit Impl(ServiceConfig c) : cfg(std::move(c)) {
        server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                    {"Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS"},
                                    {"Access-Control-Allow-Headers", "Content-Type"}});
        routes();
        for (int i = 0; i < std::max(1, cfg.job_workers); i++) workers.emplace_back([this] { work(); });
    }

    ~Impl() {
        {
            std::lock_guard<std::mutex> lock(mu);
            stopping = true;
        }
        cv.notify_all();
        for (auto &w : workers) w.join();
    }

    void work() {
        for (;;) {
            std::shared_ptr<Job> job;
            {
                std::unique_lock<std::mutex> lock(mu);
                cv.wait(lock, [&] { return stopping || !queue.empty(); });
                if (stopping) return;
                job = queue.front();
                queue.pop_front();
                job->record.state = JobState::running;
            }
            RunManifest manifest;
            manifest.command = "search";
            manifest.config = job->record.config;
            try {
                const Lattice lat = build_lattice(job->request.lattice);
                SearchReport report = search(lat, job->request.config, [&](double f) {
                    std::lock_guard<std::mutex> lock(mu);
                    job->record.progress = std::max(job->record.progress, f);
                });
                Json doc = attach_manifest(search_report_json(lat, report), manifest);
                std::lock_guard<std::mutex> lock(mu);
                job->result = std::move(doc);
                job->record.progress = 1.0;
                job->record.state = JobState::done;
            } catch (const std::exception &e) {
                std::lock_guard<std::mutex> lock(mu);
                job->record.state = JobState::failed;
                job->record.error = e.what();
            }
        }
    }

    std::shared_ptr<Job> find(const std::string &id) {
        auto it = jobs.find(id);
        return it == jobs.end() ? nullptr : it->second;
    }

    void routes() {
        server.Options(R"(/api/.*)", [](const httplib::Request &, httplib::Response &res) { res.status = 204; });

        server.Get("/api/lattice", [](const httplib::Request &req, httplib::Response &res) {
            handle(res, [&] {
                Json spec = Json::object();
                for (const char *key : {"mode", "defects", "sites"}) {
                    if (req.has_param(key)) spec[key] = req.get_param_value(key);
                }
                for (const char *key : {"width", "height", "xsize", "ysize"}) {
                    if (!req.has_param(key)) continue;
                    const std::string v = req.get_param_value(key);
                    size_t used = 0;
                    int x = 0;
                    try {
                        x = std::stoi(v, &used);
                    } catch (const std::exception &) {
                        used = 0;
                    }
                    if (used == 0 || used != v.size()) throw ValidationError(std::string(key) + " must be an integer");
                    spec[key] = x;
                }
                const Lattice lat = build_lattice(lattice_spec_from_json(spec));
                RunManifest m;
                m.command = "lattice";
                m.config = lattice_spec_json(lat.spec());
                reply(res, 200, attach_manifest(lattice_json(lat, build_dual(lat)), m));
            });
        });

        server.Post("/api/evaluate", [](const httplib::Request &req, httplib::Response &res) {
            handle(res, [&] {
                EvaluateRequest r = evaluate_request_from_json(Json::parse(req.body));
                RunManifest m;
                m.command = "evaluate";
                m.config = evaluate_request_json(r);
                reply(res, 200, attach_manifest(evaluate_document(r), m));
            });
        });

        server.Post("/api/search", [this](const httplib::Request &req, httplib::Response &res) {
            handle(res, [&] {
                auto job = std::make_shared<Job>();
                job->request = search_request_from_json(Json::parse(req.body));
                job->request.config.threads = std::min(job->request.config.threads, std::max(1, cfg.max_threads));
                // Reject bad lattices and oversized code spaces before queueing.
                const Lattice lat = build_lattice(job->request.lattice);
                CodeSpace(lat, job->request.config.enumeration_cap);
                if (job->request.config.top_k < 1) throw ValidationError("top_k must be at least 1");
                job->record.config = search_request_json(job->request);
                {
                    std::lock_guard<std::mutex> lock(mu);
                    job->record.id = "job-" + std::to_string(next_id++);
                    jobs[job->record.id] = job;
                    queue.push_back(job);
                }
                cv.notify_one();
                std::lock_guard<std::mutex> lock(mu);
                reply(res, 202, job_json(job->record));
            });
        });

        server.Get(R"(/api/search/([^/]+))", [this](const httplib::Request &req, httplib::Response &res) {
            std::lock_guard<std::mutex> lock(mu);
            auto job = find(req.matches[1]);
            if (!job) return reply_error(res, 404, "not_found", "unknown job");
            reply(res, 200, job_json(job->record));
        });

        server.Get(R"(/api/search/([^/]+)/result)", [this](const httplib::Request &req, httplib::Response &res) {
            std::lock_guard<std::mutex> lock(mu);
            auto job = find(req.matches[1]);
            if (!job) return reply_error(res, 404, "not_found", "unknown job");
            if (job->record.state == JobState::failed) return reply_error(res, 409, "failed", job->record.error);
            if (!job->result) return reply_error(res, 409, "not_ready", "job has not finished");
            reply(res, 200, *job->result);
        });

        server.Delete(R"(/api/search/([^/]+))", [this](const httplib::Request &req, httplib::Response &res) {
            std::lock_guard<std::mutex> lock(mu);
            auto job = find(req.matches[1]);
            if (!job) return reply_error(res, 404, "not_found", "unknown job");
            // A running job finishes in the background; its result is dropped with the record.
            std::erase(queue, job);
            jobs.erase(job->record.id);
            reply(res, 200, Json{{"deleted", job->record.id}});
        });
    }
};

Service::Service(ServiceConfig cfg) : impl_(std::make_unique<Impl>(std::move(cfg))) {}

Service::~Service() { stop(); }

int Service::start() {
    Impl &s = *impl_;
    if (s.cfg.port == 0) {
        s.bound_port = s.server.bind_to_any_port(s.cfg.host);
    } else {
        s.bound_port = s.server.bind_to_port(s.cfg.host, s.cfg.port) ? s.cfg.port : -1;
    }
    if (s.bound_port < 0) throw std::runtime_error("cannot bind " + s.cfg.host + ":" + std::to_string(s.cfg.port));
    s.server_thread = std::thread([&s] { s.server.listen_after_bind(); });
    s.server.wait_until_ready();
    return s.bound_port;
}

void Service::run() {
    Impl &s = *impl_;
    if (s.cfg.port == 0) {
        s.bound_port = s.server.bind_to_any_port(s.cfg.host);
    } else {
        s.bound_port = s.server.bind_to_port(s.cfg.host, s.cfg.port) ? s.cfg.port : -1;
    }
    if (s.bound_port < 0) throw std::runtime_error("cannot bind " + s.cfg.host + ":" + std::to_string(s.cfg.port));
    s.server.listen_after_bind();
}

void Service::stop() {
    if (!impl_) return;
    impl_->server.stop();
    if (impl_->server_thread.joinable()) impl_->server_thread.join();
}

int Service::port() const { return impl_->bound_port; }

}  // namespace rqcdesign
