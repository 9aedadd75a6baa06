#include "thinkaloud/engine.hpp"

#include <algorithm>

namespace thinkaloud {

namespace {

ojson enrichment_payload(const TalkNote& n) {
    ojson j;
    j["id"] = n.id.value;
    j["summary"] = n.summary ? ojson(*n.summary) : ojson(nullptr);
    j["labels"] = to_json(n.labels);
    j["actions"] = ojson::array();
    for (const auto& a : n.actions) j["actions"].push_back(a.title);
    j["linked_elements"] = ojson::array();
    for (const auto& e : n.linked_elements) j["linked_elements"].push_back(e.value);
    j["enrichment_state"] = to_string(n.enrichment_state);
    return j;
}

std::vector<Utterance> utterances_of(const PromotedSegment& seg) {
    std::vector<Utterance> out;
    for (const auto& f : seg.fragments) out.push_back({f.text, f.t_start});
    return out;
}

}  // namespace

Engine::Engine(SessionConfig config, std::shared_ptr<SemanticOracle> oracle, const RuleConfig& rules,
               EventSink sink, JobSink* jobs, RetryPolicy retry)
    : config_(std::move(config)),
      oracle_(std::move(oracle)),
      sink_(std::move(sink)),
      jobs_(jobs ? jobs : &inline_jobs_),
      retry_(std::move(retry)),
      chunker_(config_.params.chunker, rules.stopwords),
      traces_(config_.params.trace),
      tips_(config_.params.tips, rules.stopwords, rules.nudge_prompts),
      reminders_(config_.params.reminders),
      next_tick_(config_.params.tick_ms) {
    if (!oracle_) throw std::invalid_argument("engine needs an oracle");
    views_.emplace_back(0, config_.initial_view);
}

void Engine::emit(EventKind kind, ojson payload) {
    SessionEvent e{++seq_, now_, kind, std::move(payload)};
    events_.push_back(e);
    if (sink_) sink_(events_.back());
}

void Engine::start() {
    if (seq_ != 0) throw std::logic_error("engine already started");
    emit(EventKind::Config, to_json(config_));
}

void Engine::advance_to(Millis t) {
    if (closed_) return;
    while (next_tick_ <= t) {
        now_ = std::max(now_, next_tick_);
        const Millis at = next_tick_;
        next_tick_ += config_.params.tick_ms;
        tick(at);
    }
    now_ = std::max(now_, t);
}

void Engine::tick(Millis t) {
    if (config_.mode == Mode::Baseline) return;
    const auto& p = config_.params;

    if (auto seg = chunker_.tick(t)) promote(std::move(*seg));

    if (auto id = tips_.expire(t)) emit(EventKind::TipDismissed, {{"id", id->value}});
    for (const auto& id : reminders_.expire(t)) emit(EventKind::ReminderHidden, {{"note_id", id.value}});

    if (t % p.tips.generate_every_ms == 0) generate_tips(t);

    if (t % p.tips.gate_every_ms == 0) {
        if (auto tip = tips_.gate(transcript_since(t - p.current_window_ms, t), t, *oracle_)) {
            show_tip(*tip, false);
        }
    }

    if (auto nudge = tips_.pause_nudge(t, last_speech_.value_or(0))) show_tip(*nudge, true);

    if (t % p.reminders.every_ms == 0) {
        const Millis window_start = t - p.current_window_ms;
        std::vector<NoteDigest> prior;
        for (const auto& id : live_order_) {
            const auto& n = live_.at(id);
            if (n.t_end < window_start) prior.push_back({n.id, n.transcript, n.summary});
        }
        const auto window = transcript_since(window_start, t);
        if (!prior.empty() && !window.empty()) {
            for (const auto& r : reminders_.find_related(window, prior, config_.brief, t, *oracle_)) {
                const auto& n = live_.at(r.note_id);
                ojson j;
                j["note_id"] = n.id.value;
                j["summary"] = n.summary ? ojson(*n.summary) : ojson(nullptr);
                j["anchor"] = to_json(n.anchor);
                j["cooldown_until"] = r.cooldown_until;
                emit(EventKind::ReminderShown, std::move(j));
            }
        }
    }
}

void Engine::generate_tips(Millis t) {
    auto recent = transcript_since(t - config_.params.recent_window_ms, t);
    if (recent.empty()) return;
    auto used = tips_.used_texts();
    auto oracle = oracle_;
    auto brief = config_.brief;
    jobs_->submit([this, t, oracle, recent = std::move(recent), brief = std::move(brief),
                   used = std::move(used)]() -> JobSink::Completion {
        auto drafts = oracle->tip_candidates(recent, brief, used);
        return [this, t, drafts = std::move(drafts)]() {
            if (closed_ || !drafts) return;
            const auto added = tips_.add_candidates(*drafts, t);
            if (added.empty()) return;
            ojson arr = ojson::array();
            for (const auto& tip : added) arr.push_back(to_json(tip));
            emit(EventKind::TipCandidates, {{"tips", arr}});
        };
    });
}

void Engine::show_tip(const TalkTip& tip, bool nudge) {
    auto j = to_json(tip);
    j["nudge"] = nudge;
    emit(EventKind::TipShown, std::move(j));
}

void Engine::validate(const ClientMessage& msg) const {
    if (closed_) throw ProtocolError("session is closed");
    if (const auto* f = std::get_if<FragmentMsg>(&msg)) {
        if (config_.mode == Mode::Assisted && f->fragment.is_final) {
            if (auto last = chunker_.buffer().t_last_end(); last && f->fragment.t_start < *last) {
                throw ProtocolError("fragment starts at " + std::to_string(f->fragment.t_start) +
                                    " ms, before buffered speech ended at " + std::to_string(*last) + " ms");
            }
        }
    } else if (const auto* c = std::get_if<NoteCheckedMsg>(&msg)) {
        if (!live_.contains(c->id) && !pending_.contains(c->id)) {
            throw ProtocolError("unknown note '" + c->id.value + "'");
        }
    } else if (const auto* a = std::get_if<TipAckMsg>(&msg)) {
        const auto& shown = tips_.shown();
        if (std::none_of(shown.begin(), shown.end(), [&](const TalkTip& t) { return t.id == a->id; })) {
            throw ProtocolError("unknown tip '" + a->id.value + "'");
        }
    }
}

void Engine::handle(const ClientMessage& msg, Millis t) {
    if (seq_ == 0) throw std::logic_error("engine not started");
    if (closed_) throw ProtocolError("session is closed");
    advance_to(std::max(t, now_));
    validate(msg);

    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            auto payload = to_json(ClientMessage(m));
            payload.erase("kind");
            if constexpr (std::is_same_v<T, FragmentMsg>) {
                emit(EventKind::FragmentIn, std::move(payload));
                on_fragment(m.fragment);
            } else if constexpr (std::is_same_v<T, PointerMsg>) {
                emit(EventKind::PointerIn, std::move(payload));
                on_pointer(m.sample);
            } else if constexpr (std::is_same_v<T, NoteCheckedMsg>) {
                emit(EventKind::NoteChecked, std::move(payload));
            } else if constexpr (std::is_same_v<T, TipAckMsg>) {
                emit(EventKind::TipAck, std::move(payload));
                on_tip_ack(m.id);
            } else if constexpr (std::is_same_v<T, FilterMsg>) {
                emit(EventKind::FilterApplied, std::move(payload));
            } else if constexpr (std::is_same_v<T, ViewChangeMsg>) {
                emit(EventKind::ViewChange, std::move(payload));
                views_.emplace_back(now_, m.view);
            }
        },
        msg);
}

void Engine::on_fragment(const TranscriptFragment& f) {
    ojson tt;
    tt["text"] = f.text;
    tt["is_final"] = f.is_final;
    tt["t_start"] = f.t_start;
    tt["t_end"] = f.t_end;
    emit(EventKind::TalkText, std::move(tt));
    if (config_.mode == Mode::Baseline) return;

    last_speech_ = std::max(last_speech_.value_or(f.t_end), f.t_end);
    tips_.note_speech();
    if (!f.is_final) {
        if (auto seg = chunker_.observe_speech(f.t_start, f.t_end)) promote(std::move(*seg));
        return;
    }
    emit(EventKind::TalkViz, {{"signal", "boundary"}, {"t", f.t_end}});
    finals_.push_back(f);
    if (auto seg = chunker_.ingest(f, *oracle_)) promote(std::move(*seg));
}

void Engine::on_pointer(const PointerSample& s) {
    traces_.record(s);
    if (view_at(s.t) != s.view) views_.emplace_back(s.t, s.view);
}

void Engine::on_tip_ack(const TipId& id) {
    tips_.acknowledge(id);
    const auto& shown = tips_.shown();
    const auto& tip = *std::find_if(shown.begin(), shown.end(), [&](const TalkTip& t) { return t.id == id; });
    if (tip.responded) return;
    // A note already spoken in the response window answers the tip now;
    // otherwise the next one will.
    for (auto it = created_.rbegin(); it != created_.rend(); ++it) {
        const Millis dt = it->second - *tip.shown_t;
        if (dt < 0 || dt > tips_.params().response_window_ms) continue;
        tips_.record_response(id, it->first);
        emit(EventKind::TipResponse, {{"tip_id", id.value}, {"note_id", it->first.value}, {"via", "ack"}});
        return;
    }
}

void Engine::close(Millis t) {
    if (closed_) return;
    if (seq_ == 0) throw std::logic_error("engine not started");
    advance_to(std::max(t, now_));
    emit(EventKind::SessionClosed, ojson::object());
    if (config_.mode == Mode::Assisted) {
        if (auto seg = chunker_.flush()) promote(std::move(*seg));
    }
    closed_ = true;
}

View Engine::view_at(Millis t) const {
    for (auto it = views_.rbegin(); it != views_.rend(); ++it) {
        if (it->first <= t) return it->second;
    }
    return config_.initial_view;
}

std::string Engine::transcript_since(Millis from, Millis to) const {
    std::vector<std::string> parts;
    for (const auto& f : finals_) {
        if (f.t_end > from && f.t_end <= to) parts.push_back(text::trim(f.text));
    }
    return text::join_words(parts);
}

std::optional<NoteId> Engine::previous_live() const {
    if (live_order_.empty()) return std::nullopt;
    return live_order_.back();
}

void Engine::promote(PromotedSegment seg) {
    if (text::trim(seg.transcript).empty()) return;
    NoteId id("n" + std::to_string(++note_counter_));
    auto note = create_note(id, seg, traces_, view_at(seg.t_end), config_.canvas);
    utterances_[id] = utterances_of(seg);
    created_.emplace_back(id, note.t_start);
    emit(EventKind::NoteCreated, to_json(note));
    emit(EventKind::TalkViz, {{"signal", "chunking"}, {"note_id", id.value}});
    attribute_responses(note);
    pending_.emplace(id, std::move(note));
    pipeline_queue_.push_back(id);
    pump_pipeline();
}

void Engine::attribute_responses(const TalkNote& note) {
    for (const auto& tip_id : tips_.responders(note.t_start, note.transcript)) {
        const bool ack = tips_.acknowledged(tip_id);
        tips_.record_response(tip_id, note.id);
        emit(EventKind::TipResponse,
             {{"tip_id", tip_id.value}, {"note_id", note.id.value}, {"via", ack ? "ack" : "overlap"}});
    }
}

void Engine::pump_pipeline() {
    if (pipeline_busy_ || pipeline_queue_.empty()) return;
    pipeline_busy_ = true;
    const NoteId id = pipeline_queue_.front();
    pipeline_queue_.pop_front();

    PipelineJob job;
    job.note = pending_.at(id);
    job.utterances = utterances_.at(id);
    if (auto prev = previous_live()) {
        job.previous = live_.at(*prev);
        job.previous_utterances = utterances_.at(*prev);
    }
    job.candidates = threads_.candidates(live_, config_.params.threads.context_notes);

    jobs_->submit([this, job = std::move(job)]() -> JobSink::Completion {
        auto result = run_pipeline(job);
        return [this, result = std::move(result)]() mutable { apply_pipeline(std::move(result)); };
    });
}

Engine::PipelineResult Engine::run_pipeline(const PipelineJob& job) const {
    const auto& pp = config_.params.pipeline;
    PipelineResult r;
    r.note = enrich(job.note, *oracle_, retry_, pp.summary_max_chars);
    r.note.linked_elements = link_elements(r.note, job.utterances, config_.scene, *oracle_, config_.canvas, pp);

    if (job.previous) {
        auto outcome = try_merge(*job.previous, r.note, *oracle_, config_.canvas, pp.merge_window_ms);
        if (outcome.merged) {
            auto merged = enrich(std::move(*outcome.note), *oracle_, retry_, pp.summary_max_chars);
            auto utts = job.previous_utterances;
            utts.insert(utts.end(), job.utterances.begin(), job.utterances.end());
            merged.linked_elements = link_elements(merged, utts, config_.scene, *oracle_, config_.canvas, pp);
            r.merged = std::move(merged);
            return r;
        }
    }
    r.thread = choose_thread(r.note.transcript, r.note.t_start, job.candidates, *oracle_, config_.params.threads);
    return r;
}

void Engine::apply_pipeline(PipelineResult r) {
    const NoteId id = r.note.id;
    pending_.erase(id);
    emit(EventKind::NoteEnriched, enrichment_payload(r.note));

    if (r.merged) {
        auto& merged = *r.merged;
        auto& utts = utterances_.at(merged.id);
        const auto& more = utterances_.at(id);
        utts.insert(utts.end(), more.begin(), more.end());
        retired_.insert(id);
        live_[merged.id] = merged;

        ojson j;
        j["into"] = merged.id.value;
        j["from"] = id.value;
        j["note"] = to_json(merged);
        emit(EventKind::NoteMerged, std::move(j));
        emit(EventKind::NoteEnriched, enrichment_payload(merged));
        const auto& thread = threads_.touch(merged.thread_id, merged.t_end);
        emit(EventKind::ThreadAssigned,
             {{"note_id", merged.id.value}, {"created", false}, {"thread", to_json(thread)}});
    } else {
        auto note = std::move(r.note);
        const bool created = !r.thread.has_value();
        const auto& thread = threads_.add(note, r.thread, thread_title(note));
        note.thread_id = thread.id;
        live_order_.push_back(id);
        emit(EventKind::ThreadAssigned, {{"note_id", id.value}, {"created", created}, {"thread", to_json(thread)}});
        live_.emplace(id, std::move(note));
    }

    pipeline_busy_ = false;
    pump_pipeline();
}

std::vector<TalkNote> Engine::live_notes_ordered() const {
    std::vector<TalkNote> out;
    out.reserve(live_order_.size());
    for (const auto& id : live_order_) out.push_back(live_.at(id));
    return out;
}

std::vector<ThreadGroup> Engine::query(const LabelSet& labels) const {
    return filter_grouped(threads_.threads(), live_, labels);
}

}  // namespace thinkaloud
