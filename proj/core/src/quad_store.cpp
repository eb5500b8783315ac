#include "onto/quad_store.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <functional>
#include <mutex>

#include "onto/error.hpp"

namespace onto {

namespace {

constexpr char kMagic[8] = {'O', 'N', 'T', 'O', 'Q', 'S', '0', '1'};
constexpr std::size_t kCompactionMinDead = 64;

void put_u32(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    out.push_back(static_cast<char>((v >> 24) & 0xff));
}

void put_string(std::string& out, const std::string& s) {
    put_u32(out, static_cast<std::uint32_t>(s.size()));
    out += s;
}

// Sequential reader over a byte buffer; returns false when out of data.
struct Cursor {
    const char* data;
    std::size_t size;
    std::size_t pos = 0;

    bool u32(std::uint32_t& v) {
        if (pos + 4 > size) return false;
        v = static_cast<std::uint8_t>(data[pos]) |
            (static_cast<std::uint32_t>(static_cast<std::uint8_t>(data[pos + 1])) << 8) |
            (static_cast<std::uint32_t>(static_cast<std::uint8_t>(data[pos + 2])) << 16) |
            (static_cast<std::uint32_t>(static_cast<std::uint8_t>(data[pos + 3])) << 24);
        pos += 4;
        return true;
    }

    bool str(std::string& s) {
        std::uint32_t len;
        if (!u32(len) || pos + len > size) return false;
        s.assign(data + pos, len);
        pos += len;
        return true;
    }

    bool byte(std::uint8_t& b) {
        if (pos >= size) return false;
        b = static_cast<std::uint8_t>(data[pos++]);
        return true;
    }
};

[[noreturn]] void io_fail(const std::string& what) {
    throw Error(Errc::io_error, what + ": " + std::strerror(errno));
}

}  // namespace

std::size_t QuadStore::TermHash::operator()(const Term& t) const noexcept {
    std::size_t h = std::hash<int>()(static_cast<int>(t.kind()));
    auto mix = [&h](const std::string& s) {
        h ^= std::hash<std::string>()(s) + 0x9e3779b9 + (h << 6) + (h >> 2);
    };
    mix(t.value());
    mix(t.datatype());
    mix(t.language());
    return h;
}

QuadStore::QuadStore(const std::filesystem::path& root) : root_(root) {
    std::error_code ec;
    std::filesystem::create_directories(root_, ec);
    if (ec && !std::filesystem::is_directory(root_))
        throw Error(Errc::io_error, "cannot create store directory " + root_.string());

    auto lock_path = root_ / "store.lock";
    lock_fd_ = ::open(lock_path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
    if (lock_fd_ < 0) io_fail("cannot open lock file " + lock_path.string());
    if (::flock(lock_fd_, LOCK_EX | LOCK_NB) != 0) {
        ::close(lock_fd_);
        lock_fd_ = -1;
        throw Error(Errc::lock_held, "store at " + root_.string() + " is locked by another writer");
    }

    auto data_path = root_ / "store.dat";
    data_fd_ = ::open(data_path.c_str(), O_RDWR | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
    if (data_fd_ < 0) {
        ::close(lock_fd_);
        io_fail("cannot open store file " + data_path.string());
    }
    try {
        replay_file();
    } catch (...) {
        ::close(data_fd_);
        ::close(lock_fd_);
        throw;
    }
}

QuadStore::~QuadStore() {
    if (data_fd_ >= 0) ::close(data_fd_);
    if (lock_fd_ >= 0) ::close(lock_fd_);
}

void QuadStore::replay_file() {
    std::string content;
    {
        struct stat st {};
        if (::fstat(data_fd_, &st) != 0) io_fail("cannot stat store file");
        content.resize(static_cast<std::size_t>(st.st_size));
        std::size_t off = 0;
        while (off < content.size()) {
            ssize_t n = ::pread(data_fd_, content.data() + off, content.size() - off,
                                static_cast<off_t>(off));
            if (n < 0) io_fail("cannot read store file");
            if (n == 0) break;
            off += static_cast<std::size_t>(n);
        }
        content.resize(off);
    }

    if (content.empty()) {
        std::string header(kMagic, sizeof(kMagic));
        append_and_sync(header);
        return;
    }
    if (content.size() < sizeof(kMagic) ||
        std::memcmp(content.data(), kMagic, sizeof(kMagic)) != 0)
        throw Error(Errc::io_error,
                    "incompatible store file at " + (root_ / "store.dat").string());

    Cursor file{content.data(), content.size(), sizeof(kMagic)};
    while (file.pos < file.size) {
        std::uint32_t payload_len;
        std::size_t record_start = file.pos;
        if (!file.u32(payload_len) || file.pos + payload_len > file.size) {
            // Torn tail from an interrupted append: drop it.
            if (::ftruncate(data_fd_, static_cast<off_t>(record_start)) != 0)
                io_fail("cannot truncate torn store tail");
            break;
        }
        Cursor rec{content.data() + file.pos, payload_len};
        file.pos += payload_len;

        std::uint8_t type;
        if (!rec.byte(type)) throw Error(Errc::io_error, "corrupt store record");
        if (type == 'T') {
            std::uint8_t kind;
            std::string value, datatype, lang;
            if (!rec.byte(kind) || !rec.str(value) || !rec.str(datatype) || !rec.str(lang))
                throw Error(Errc::io_error, "corrupt term record");
            Term t;
            switch (kind) {
                case 0: t = Term::iri(std::move(value)); break;
                case 1: t = Term::blank(std::move(value)); break;
                case 2:
                    t = lang.empty() ? Term::literal(std::move(value), std::move(datatype))
                                     : Term::lang_literal(std::move(value), std::move(lang));
                    break;
                default: throw Error(Errc::io_error, "corrupt term kind");
            }
            term_ids_.emplace(t, static_cast<TermId>(terms_.size()));
            terms_.push_back(std::move(t));
        } else if (type == 'P') {
            std::uint32_t graph_id, prefix_count, triple_count;
            if (!rec.u32(graph_id) || !rec.u32(prefix_count))
                throw Error(Errc::io_error, "corrupt put record");
            GraphInfo info;
            for (std::uint32_t i = 0; i < prefix_count; ++i) {
                std::string prefix, ns;
                if (!rec.str(prefix) || !rec.str(ns))
                    throw Error(Errc::io_error, "corrupt prefix record");
                info.prefixes[std::move(prefix)] = std::move(ns);
            }
            if (!rec.u32(triple_count)) throw Error(Errc::io_error, "corrupt put record");
            std::vector<QuadIds> quads;
            quads.reserve(triple_count);
            for (std::uint32_t i = 0; i < triple_count; ++i) {
                std::uint32_t s, p, o;
                if (!rec.u32(s) || !rec.u32(p) || !rec.u32(o))
                    throw Error(Errc::io_error, "corrupt quad record");
                if (s >= terms_.size() || p >= terms_.size() || o >= terms_.size() ||
                    graph_id >= terms_.size())
                    throw Error(Errc::io_error, "dangling term id in store");
                quads.push_back({graph_id, s, p, o});
            }
            if (graphs_.count(graph_id)) ++dead_records_;
            apply_put(graph_id, std::move(info), quads);
        } else if (type == 'D') {
            std::uint32_t graph_id;
            if (!rec.u32(graph_id)) throw Error(Errc::io_error, "corrupt delete record");
            if (graphs_.count(graph_id)) ++dead_records_;
            apply_delete(graph_id);
            ++dead_records_;
        } else {
            throw Error(Errc::io_error, "unknown store record type");
        }
    }
}

void QuadStore::append_and_sync(const std::string& record) {
    std::size_t off = 0;
    while (off < record.size()) {
        ssize_t n = ::write(data_fd_, record.data() + off, record.size() - off);
        if (n < 0) {
            if (errno == EINTR) continue;
            io_fail("store write failed");
        }
        off += static_cast<std::size_t>(n);
    }
    if (::fsync(data_fd_) != 0) io_fail("store fsync failed");
}

QuadStore::TermId QuadStore::intern(const Term& t, std::string& log) {
    auto it = term_ids_.find(t);
    if (it != term_ids_.end()) return it->second;
    TermId id = static_cast<TermId>(terms_.size());
    terms_.push_back(t);
    term_ids_.emplace(t, id);

    std::string payload;
    payload.push_back('T');
    payload.push_back(static_cast<char>(t.kind() == TermKind::iri     ? 0
                                        : t.kind() == TermKind::blank ? 1
                                                                      : 2));
    put_string(payload, t.value());
    put_string(payload, t.datatype());
    put_string(payload, t.language());
    put_u32(log, static_cast<std::uint32_t>(payload.size()));
    log += payload;
    return id;
}

std::optional<QuadStore::TermId> QuadStore::find_term(const Term& t) const {
    auto it = term_ids_.find(t);
    if (it == term_ids_.end()) return std::nullopt;
    return it->second;
}

void QuadStore::remove_graph_quads(TermId graph_id) {
    auto it = gspo_.lower_bound({graph_id, 0, 0, 0});
    std::vector<QuadIds> doomed;
    for (; it != gspo_.end() && (*it)[0] == graph_id; ++it) doomed.push_back(*it);
    for (const auto& q : doomed) {
        gspo_.erase(q);
        gpos_.erase({q[0], q[2], q[3], q[1]});
        gosp_.erase({q[0], q[3], q[1], q[2]});
    }
}

void QuadStore::apply_put(TermId graph_id, GraphInfo info, const std::vector<QuadIds>& quads) {
    remove_graph_quads(graph_id);
    info.triple_count = quads.size();
    for (const auto& q : quads) {
        gspo_.insert(q);
        gpos_.insert({q[0], q[2], q[3], q[1]});
        gosp_.insert({q[0], q[3], q[1], q[2]});
    }
    graphs_[graph_id] = std::move(info);
}

void QuadStore::apply_delete(TermId graph_id) {
    remove_graph_quads(graph_id);
    graphs_.erase(graph_id);
}

void QuadStore::put_graph(const Term& name, const Graph& g) {
    if (!name.is_iri() || !is_valid_iri(name.value()))
        throw Error(Errc::invalid_iri, "graph name must be an absolute IRI");
    std::unique_lock lock(mu_);

    std::string log;
    TermId graph_id = intern(name, log);
    std::vector<QuadIds> quads;
    quads.reserve(g.size());
    for (const auto& t : g) {
        TermId s = intern(t.subject, log);
        TermId p = intern(t.predicate, log);
        TermId o = intern(t.object, log);
        quads.push_back({graph_id, s, p, o});
    }

    std::string payload;
    payload.push_back('P');
    put_u32(payload, graph_id);
    put_u32(payload, static_cast<std::uint32_t>(g.prefixes().size()));
    for (const auto& [prefix, ns] : g.prefixes()) {
        put_string(payload, prefix);
        put_string(payload, ns);
    }
    put_u32(payload, static_cast<std::uint32_t>(quads.size()));
    for (const auto& q : quads) {
        put_u32(payload, q[1]);
        put_u32(payload, q[2]);
        put_u32(payload, q[3]);
    }
    put_u32(log, static_cast<std::uint32_t>(payload.size()));
    log += payload;

    if (graphs_.count(graph_id)) ++dead_records_;
    append_and_sync(log);
    GraphInfo info;
    info.prefixes = g.prefixes();
    apply_put(graph_id, std::move(info), quads);
    maybe_compact_locked();
}

void QuadStore::delete_graph(const Term& name) {
    std::unique_lock lock(mu_);
    auto id = find_term(name);
    if (!id || !graphs_.count(*id)) return;  // idempotent

    std::string payload;
    payload.push_back('D');
    put_u32(payload, *id);
    std::string log;
    put_u32(log, static_cast<std::uint32_t>(payload.size()));
    log += payload;
    append_and_sync(log);
    apply_delete(*id);
    dead_records_ += 2;  // the delete record and the put it buries
    maybe_compact_locked();
}

std::vector<Quad> QuadStore::match(const QuadPattern& pattern) const {
    std::shared_lock lock(mu_);

    auto resolve = [this](const std::optional<Term>& t) -> std::optional<std::optional<TermId>> {
        if (!t) return std::optional<std::optional<TermId>>{std::optional<TermId>{}};
        auto id = find_term(*t);
        if (!id) return std::nullopt;  // bound to a term the store has never seen
        return std::optional<std::optional<TermId>>{id};
    };

    auto g = resolve(pattern.graph);
    auto s = resolve(pattern.subject);
    auto p = resolve(pattern.predicate);
    auto o = resolve(pattern.object);
    if (!g || !s || !p || !o) return {};
    std::optional<TermId> gid = *g, sid = *s, pid = *p, oid = *o;

    // Pick the index whose key prefix covers the most bound positions.
    const std::set<QuadIds>* index = &gspo_;
    std::vector<TermId> key;
    enum class Layout { gspo, gpos, gosp } layout = Layout::gspo;
    if (gid) {
        key.push_back(*gid);
        if (sid) {
            key.push_back(*sid);
            if (pid) key.push_back(*pid);
        } else if (pid) {
            index = &gpos_;
            layout = Layout::gpos;
            key.push_back(*pid);
            if (oid) key.push_back(*oid);
        } else if (oid) {
            index = &gosp_;
            layout = Layout::gosp;
            key.push_back(*oid);
        }
    }

    QuadIds low = {0, 0, 0, 0};
    for (std::size_t i = 0; i < key.size(); ++i) low[i] = key[i];

    std::vector<Quad> out;
    auto emit_if_match = [&](const QuadIds& row) {
        QuadIds q;  // normalize back to g,s,p,o
        switch (layout) {
            case Layout::gspo: q = row; break;
            case Layout::gpos: q = {row[0], row[3], row[1], row[2]}; break;
            case Layout::gosp: q = {row[0], row[2], row[3], row[1]}; break;
        }
        if (gid && q[0] != *gid) return;
        if (sid && q[1] != *sid) return;
        if (pid && q[2] != *pid) return;
        if (oid && q[3] != *oid) return;
        out.push_back(Quad{Triple{term(q[1]), term(q[2]), term(q[3])}, term(q[0])});
    };

    for (auto it = index->lower_bound(low); it != index->end(); ++it) {
        bool in_range = true;
        for (std::size_t i = 0; i < key.size(); ++i) {
            if ((*it)[i] != key[i]) {
                in_range = false;
                break;
            }
        }
        if (!in_range) break;
        emit_if_match(*it);
    }
    return out;
}

std::vector<Term> QuadStore::list_graphs() const {
    std::shared_lock lock(mu_);
    std::set<Term> names;
    for (const auto& [id, info] : graphs_) {
        if (info.triple_count > 0) names.insert(term(id));
    }
    return {names.begin(), names.end()};
}

Graph QuadStore::get_graph(const Term& name) const {
    std::shared_lock lock(mu_);
    Graph out;
    auto id = find_term(name);
    if (!id) return out;
    auto it = graphs_.find(*id);
    if (it == graphs_.end()) return out;
    out.set_prefixes(it->second.prefixes);
    for (auto q = gspo_.lower_bound({*id, 0, 0, 0}); q != gspo_.end() && (*q)[0] == *id; ++q) {
        out.insert(Triple{term((*q)[1]), term((*q)[2]), term((*q)[3])});
    }
    return out;
}

bool QuadStore::has_graph(const Term& name) const {
    std::shared_lock lock(mu_);
    auto id = find_term(name);
    return id && graphs_.count(*id) > 0;
}

void QuadStore::maybe_compact_locked() {
    if (dead_records_ < kCompactionMinDead || dead_records_ < graphs_.size()) return;
    // Rebuild the file from live state under a fresh dictionary.
    std::vector<Term> new_terms;
    std::unordered_map<Term, TermId, TermHash> new_ids;
    std::string body;
    auto intern_new = [&](const Term& t) -> TermId {
        auto it = new_ids.find(t);
        if (it != new_ids.end()) return it->second;
        TermId id = static_cast<TermId>(new_terms.size());
        new_terms.push_back(t);
        new_ids.emplace(t, id);
        std::string payload;
        payload.push_back('T');
        payload.push_back(static_cast<char>(t.kind() == TermKind::iri     ? 0
                                            : t.kind() == TermKind::blank ? 1
                                                                          : 2));
        put_string(payload, t.value());
        put_string(payload, t.datatype());
        put_string(payload, t.language());
        put_u32(body, static_cast<std::uint32_t>(payload.size()));
        body += payload;
        return id;
    };

    std::set<QuadIds> new_gspo, new_gpos, new_gosp;
    std::map<TermId, GraphInfo> new_graphs;
    for (const auto& [old_gid, info] : graphs_) {
        TermId gid = intern_new(term(old_gid));
        std::string payload;
        payload.push_back('P');
        put_u32(payload, gid);
        put_u32(payload, static_cast<std::uint32_t>(info.prefixes.size()));
        for (const auto& [prefix, ns] : info.prefixes) {
            put_string(payload, prefix);
            put_string(payload, ns);
        }
        std::vector<QuadIds> quads;
        for (auto it = gspo_.lower_bound({old_gid, 0, 0, 0});
             it != gspo_.end() && (*it)[0] == old_gid; ++it) {
            quads.push_back({gid, intern_new(term((*it)[1])), intern_new(term((*it)[2])),
                             intern_new(term((*it)[3]))});
        }
        put_u32(payload, static_cast<std::uint32_t>(quads.size()));
        for (const auto& q : quads) {
            put_u32(payload, q[1]);
            put_u32(payload, q[2]);
            put_u32(payload, q[3]);
            new_gspo.insert(q);
            new_gpos.insert({q[0], q[2], q[3], q[1]});
            new_gosp.insert({q[0], q[3], q[1], q[2]});
        }
        put_u32(body, static_cast<std::uint32_t>(payload.size()));
        body += payload;
        GraphInfo ni = info;
        new_graphs[gid] = std::move(ni);
    }

    auto tmp_path = root_ / "store.dat.tmp";
    int tmp_fd = ::open(tmp_path.c_str(), O_RDWR | O_CREAT | O_TRUNC | O_APPEND | O_CLOEXEC, 0644);
    if (tmp_fd < 0) io_fail("cannot open compaction file");
    std::string full(kMagic, sizeof(kMagic));
    full += body;
    std::size_t off = 0;
    while (off < full.size()) {
        ssize_t n = ::write(tmp_fd, full.data() + off, full.size() - off);
        if (n < 0) {
            if (errno == EINTR) continue;
            ::close(tmp_fd);
            io_fail("compaction write failed");
        }
        off += static_cast<std::size_t>(n);
    }
    if (::fsync(tmp_fd) != 0) {
        ::close(tmp_fd);
        io_fail("compaction fsync failed");
    }
    if (::rename(tmp_path.c_str(), (root_ / "store.dat").c_str()) != 0) {
        ::close(tmp_fd);
        io_fail("compaction rename failed");
    }
    ::close(data_fd_);
    data_fd_ = tmp_fd;

    terms_ = std::move(new_terms);
    term_ids_ = std::move(new_ids);
    graphs_ = std::move(new_graphs);
    gspo_ = std::move(new_gspo);
    gpos_ = std::move(new_gpos);
    gosp_ = std::move(new_gosp);
    dead_records_ = 0;
}

void QuadStore::compact() {
    std::unique_lock lock(mu_);
    dead_records_ = kCompactionMinDead + graphs_.size();  // force
    maybe_compact_locked();
}

}  // namespace onto
