#include "vismc/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <mutex>
#include <thread>

#include "vismc/executor.hpp"
#include "vismc/parser.hpp"
#include "vismc/synthesizer.hpp"

namespace vismc::pipeline {

namespace {

json vm_config_json(const VmConfig& vm) {
    return json{{"detect_threshold", vm.detect_threshold},
                {"near_frac", vm.near_frac},
                {"min_overlap", vm.min_overlap},
                {"inside_frac", vm.inside_frac},
                {"contact_tol", vm.contact_tol}};
}

class TaskQueue {
public:
    void push(Task t) {
        {
            std::lock_guard lock(mutex_);
            queue_.push_back(std::move(t));
        }
        cv_.notify_one();
    }

    std::optional<Task> pop() {
        std::unique_lock lock(mutex_);
        cv_.wait(lock, [this] { return closed_ || !queue_.empty(); });
        if (queue_.empty()) return std::nullopt;
        Task t = std::move(queue_.front());
        queue_.pop_front();
        return t;
    }

    void close() {
        {
            std::lock_guard lock(mutex_);
            closed_ = true;
        }
        cv_.notify_all();
    }

private:
    std::mutex mutex_;
    std::condition_variable cv_;
    std::deque<Task> queue_;
    bool closed_ = false;
};

class Scheduler {
public:
    Scheduler(const Plan& plan, PerceptionBackend& backend, ResultStore& store,
              const PipelineConfig& cfg)
        : plan_(plan), backend_(backend), store_(store), cfg_(cfg) {}

    RunReport run() {
        auto t0 = std::chrono::steady_clock::now();

        for (const Task& t : plan_.roots) submit(t);

        std::vector<std::thread> workers;
        for (int i = 0; i < std::max(1, cfg_.light_pool); ++i)
            workers.emplace_back([this] { work(light_); });
        for (int i = 0; i < std::max(1, cfg_.heavy_pool); ++i)
            workers.emplace_back([this] { work(heavy_); });

        {
            std::unique_lock lock(done_mutex_);
            done_cv_.wait(lock, [this] { return outstanding_ == 0; });
        }
        light_.close();
        heavy_.close();
        for (auto& w : workers) w.join();

        report_.parse_done = counters_.parse_done;
        report_.parse_failed = counters_.parse_failed;
        report_.parse_skipped = counters_.parse_skipped;
        report_.synth_done = counters_.synth_done;
        report_.synth_degenerate = counters_.synth_degenerate;
        report_.synth_skipped = counters_.synth_skipped;
        report_.exec_done = counters_.exec_done;
        report_.exec_failed = counters_.exec_failed;
        report_.exec_skipped = counters_.exec_skipped;
        report_.retries = counters_.retries;
        report_.completed = !interrupted_;
        if (!interrupted_) store_.finalize();
        report_.wall_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
        return report_;
    }

private:
    void submit(Task t) {
        ++outstanding_;
        (t.kind == Task::Kind::Execute ? heavy_ : light_).push(std::move(t));
    }

    void finish_one() {
        if (--outstanding_ == 0) {
            std::lock_guard lock(done_mutex_);
            done_cv_.notify_all();
        }
    }

    void work(TaskQueue& queue) {
        while (auto task = queue.pop()) {
            if (!interrupted_) {
                process(*task);
                check_interrupt();
            }
            finish_one();
        }
    }

    void check_interrupt() {
        if (cfg_.interrupt_after_writes >= 0 &&
            store_.writes() >= static_cast<std::size_t>(cfg_.interrupt_after_writes)) {
            interrupted_ = true;
        }
    }

    void process(Task task) {
        try {
            switch (task.kind) {
                case Task::Kind::Parse: return do_parse(task);
                case Task::Kind::Synthesize: return do_synthesize(task);
                case Task::Kind::Execute: return do_execute(task);
            }
        } catch (const StoreError&) {
            // persistence is broken: stop the run, keep completed work
            interrupted_ = true;
        } catch (const std::exception& e) {
            retry_or_fail(std::move(task), e.what());
        }
    }

    void retry_or_fail(Task task, const std::string& why) {
        if (task.attempts < cfg_.max_retries) {
            ++task.attempts;
            ++counters_.retries;
            progress("retrying after: " + why);
            submit(std::move(task));
            return;
        }
        if (task.kind == Task::Kind::Execute) {
            // keep ranking total: record the failure as indeterminate
            Verdict v;
            v.image_id = task.image_id;
            v.triplet_id = task.triplet_id;
            v.outcome = Outcome::Indeterminate;
            v.error_class = ErrorClass::BackendFailure;
            store_verdict(task.query_id, v);
            ++counters_.exec_failed;
        } else if (task.kind == Task::Kind::Parse) {
            store_.put_spec(task.query_id, json{{"query_id", task.query_id}, {"error", why}});
            ++counters_.parse_failed;
        } else {
            RoutineProgram p = degenerate_program(task.triplet_id, ErrorClass::BadRoutineGeneration);
            store_routine(task.query_id, p);
            spawn_executes(task.query_id, task.triplet_id);
            ++counters_.synth_degenerate;
        }
    }

    void progress(const std::string& msg) {
        if (cfg_.progress) cfg_.progress(msg);
    }

    const QueryJob& job(const std::string& query_id) const {
        for (const auto& q : plan_.queries)
            if (q.query_id == query_id) return q;
        throw std::logic_error("unknown query " + query_id);
    }

    void store_routine(const std::string& query_id, const RoutineProgram& p) {
        store_.put_routine(query_id, p.triplet_id,
                           json{{"query_id", query_id},
                                {"triplet_id", p.triplet_id},
                                {"routine", to_json(p)}});
    }

    void store_verdict(const std::string& query_id, const Verdict& v) {
        json record = to_json(v);
        record["query_id"] = query_id;
        store_.put_verdict(query_id, v.triplet_id, v.image_id, record);
    }

    void spawn_synthesizes(const std::string& query_id, const Specification& spec) {
        for (const Triplet& t : spec.triplets) {
            Task task;
            task.kind = Task::Kind::Synthesize;
            task.query_id = query_id;
            task.triplet_id = t.id;
            submit(std::move(task));
        }
    }

    void spawn_executes(const std::string& query_id, int triplet_id) {
        for (const std::string& image : plan_.corpus) {
            Task task;
            task.kind = Task::Kind::Execute;
            task.query_id = query_id;
            task.triplet_id = triplet_id;
            task.image_id = image;
            submit(std::move(task));
        }
    }

    void do_parse(const Task& task) {
        if (auto existing = store_.get_spec(task.query_id)) {
            ++counters_.parse_skipped;
            if (existing->contains("spec")) {
                Specification spec = specification_from_json(existing->at("spec"));
                spawn_synthesizes(task.query_id, spec);
            }
            return;
        }
        Specification spec;
        try {
            spec = parse::parse_query(QueryText{job(task.query_id).text});
        } catch (const ParseError& e) {
            if (cfg_.fallback_composite) {
                spec = parse::composite_fallback(QueryText{job(task.query_id).text});
            } else {
                store_.put_spec(task.query_id,
                                json{{"query_id", task.query_id}, {"error", e.what()}});
                ++counters_.parse_failed;
                progress("parse failed for " + task.query_id + ": " + e.what());
                return;
            }
        }
        store_.put_spec(task.query_id,
                        json{{"query_id", task.query_id}, {"spec", to_json(spec)}});
        ++counters_.parse_done;
        spawn_synthesizes(task.query_id, spec);
    }

    void do_synthesize(const Task& task) {
        if (store_.get_routine(task.query_id, task.triplet_id)) {
            ++counters_.synth_skipped;
            spawn_executes(task.query_id, task.triplet_id);
            return;
        }
        auto spec_record = store_.get_spec(task.query_id);
        if (!spec_record || !spec_record->contains("spec"))
            throw std::logic_error("synthesize scheduled before parse result");
        Specification spec = specification_from_json(spec_record->at("spec"));
        const Triplet* triplet = nullptr;
        for (const auto& t : spec.triplets)
            if (t.id == task.triplet_id) triplet = &t;
        if (!triplet) throw std::logic_error("triplet id out of range");

        RoutineProgram program;
        try {
            program = synth::synthesize(*triplet, cfg_.lexicon);
            ++counters_.synth_done;
        } catch (const synth::SynthesisError& e) {
            program = degenerate_program(task.triplet_id, e.error_class);
            ++counters_.synth_degenerate;
            progress("degenerate routine for " + task.query_id + "#" +
                     std::to_string(task.triplet_id) + ": " + e.what());
        }
        store_routine(task.query_id, program);
        spawn_executes(task.query_id, task.triplet_id);
    }

    void do_execute(const Task& task) {
        if (store_.get_verdict(task.query_id, task.triplet_id, task.image_id)) {
            ++counters_.exec_skipped;
            return;
        }
        auto routine_record = store_.get_routine(task.query_id, task.triplet_id);
        if (!routine_record) throw std::logic_error("execute scheduled before synthesis result");
        RoutineProgram program = routine_from_json(routine_record->at("routine"));
        Verdict v = vm::execute(program, task.image_id, backend_, cfg_.vm);
        store_verdict(task.query_id, v);
        ++counters_.exec_done;
    }

    const Plan& plan_;
    PerceptionBackend& backend_;
    ResultStore& store_;
    const PipelineConfig& cfg_;

    TaskQueue light_, heavy_;
    std::atomic<std::size_t> outstanding_{0};
    std::mutex done_mutex_;
    std::condition_variable done_cv_;
    std::atomic<bool> interrupted_{false};

    struct AtomicReport {
        std::atomic<std::size_t> parse_done{0}, parse_failed{0}, parse_skipped{0};
        std::atomic<std::size_t> synth_done{0}, synth_degenerate{0}, synth_skipped{0};
        std::atomic<std::size_t> exec_done{0}, exec_failed{0}, exec_skipped{0};
        std::atomic<std::size_t> retries{0};
    };
    AtomicReport counters_;
    RunReport report_;
};

}  // namespace

Plan plan(const std::vector<QueryJob>& queries, const std::vector<std::string>& corpus_ids,
          const PipelineConfig& cfg, const std::string& backend_name) {
    if (queries.empty()) throw std::invalid_argument("plan requires at least one query");
    if (corpus_ids.empty()) throw std::invalid_argument("plan requires a non-empty image corpus");

    Plan p;
    p.queries = queries;
    std::sort(p.queries.begin(), p.queries.end(),
              [](const QueryJob& a, const QueryJob& b) { return a.query_id < b.query_id; });
    p.corpus = corpus_ids;
    std::sort(p.corpus.begin(), p.corpus.end());
    p.corpus.erase(std::unique(p.corpus.begin(), p.corpus.end()), p.corpus.end());

    json jq = json::array();
    for (const auto& q : p.queries) jq.push_back(json{{"id", q.query_id}, {"text", q.text}});
    p.inputs = json{{"queries", jq},
                    {"corpus", p.corpus},
                    {"vm", vm_config_json(cfg.vm)},
                    {"lexicon", cfg.lexicon.fingerprint()},
                    {"fallback_composite", cfg.fallback_composite},
                    {"backend", backend_name}};
    p.hash = ResultStore::plan_hash(p.inputs);

    for (const auto& q : p.queries) {
        Task t;
        t.kind = Task::Kind::Parse;
        t.query_id = q.query_id;
        p.roots.push_back(std::move(t));
    }
    return p;
}

RunReport run(const Plan& p, PerceptionBackend& backend, ResultStore& store,
              const PipelineConfig& cfg) {
    store.open(p.hash);
    Scheduler scheduler(p, backend, store, cfg);
    return scheduler.run();
}

}  // namespace vismc::pipeline
