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

// HTTP front end:
//
//   GET    /api/lattice?mode=grid&width=5&height=5&defects=(2,2)
//   POST   /api/evaluate            synchronous evaluation
//   POST   /api/search              202 {"id": ...}
//   GET    /api/search/{id}         job record
//   GET    /api/search/{id}/result  search report (409 until done)
//   DELETE /api/search/{id}

#ifndef RQCDESIGN_SERVICE_H
#define RQCDESIGN_SERVICE_H

#include <memory>
#include <optional>
#include <string>

#include "rqcdesign/io.h"

namespace rqcdesign {

struct ServiceConfig {
    std::string host = "127.0.0.1";
    int port = 8080;  // 0 picks a free port
    int job_workers = 1;
    int max_threads = 8;  // cap on a job's search threads
};

enum class JobState { queued, running, done, failed };

const char *job_state_name(JobState s);

struct JobRecord {
    std::string id;
    JobState state = JobState::queued;
    double progress = 0.0;
    Json config;
    std::string error;
};

Json job_json(const JobRecord &job);

class Service {
   public:
    explicit Service(ServiceConfig cfg = {});
    ~Service();
    Service(const Service &) = delete;
    Service &operator=(const Service &) = delete;

    /// Binds and serves on a background thread. Returns the bound port.
    int start();
    /// Binds and serves on the calling thread until stop().
    void run();
    void stop();
    int port() const;

   private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace rqcdesign

#endif
