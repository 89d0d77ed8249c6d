#include "steenrod/table_cache.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace steenrod {

namespace fs = std::filesystem;

uint64_t fnv1a(const std::string& s)
{
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string encode_word(const Word& w)
{
    if (w.empty())
        return "e";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i)
            s += '.';
        s += w[i] == kBeta ? std::string("b") : std::to_string(w[i]);
    }
    return s;
}

std::optional<Word> decode_word(const std::string& s)
{
    if (s == "e")
        return Word{};
    Word w;
    std::stringstream ss(s);
    for (std::string part; std::getline(ss, part, '.');) {
        if (part == "b") {
            w.push_back(kBeta);
            continue;
        }
        if (part.empty() || part.size() > 7 || part.find_first_not_of("0123456789") != std::string::npos)
            return std::nullopt;
        int v = std::stoi(part);
        if (v <= 0)
            return std::nullopt;
        w.push_back(v);
    }
    if (w.empty())
        return std::nullopt;
    return w;
}

namespace {

std::string hex(uint64_t v)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string seal(const std::string& body)
{
    return body + " #" + hex(fnv1a(body));
}

/* The entry body when the checksum matches. */
std::optional<std::string> unseal(const std::string& line)
{
    auto pos = line.rfind(" #");
    if (pos == std::string::npos)
        return std::nullopt;
    std::string body = line.substr(0, pos);
    if (line.substr(pos + 2) != hex(fnv1a(body)))
        return std::nullopt;
    return body;
}

std::string header_line(const char* kind)
{
    return std::string("steenrod-cache ") + kind + " " + std::to_string(kCacheVersion);
}

}  // namespace

std::string TableCache::resolve_dir(const std::optional<std::string>& flag)
{
    std::string dir;
    if (flag)
        dir = *flag;
    else if (const char* env = std::getenv(kCacheEnvVar))
        dir = env;
    return dir == "none" ? std::string() : dir;
}

TableCache::TableCache(std::string dir) : dir_(std::move(dir))
{
    if (!enabled())
        return;
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec || !fs::is_directory(dir_)) {
        warnings_.push_back("cache directory " + dir_ + " is not usable; continuing without cache");
        dir_.clear();
    }
}

std::vector<std::string> TableCache::read_entries(const std::string& name, const std::string& header)
{
    std::vector<std::string> out;
    if (!enabled())
        return out;
    std::ifstream in(fs::path(dir_) / name);
    if (!in)
        return out;
    std::string line;
    if (!std::getline(in, line) || line != header) {
        ++ignored_;
        return out;
    }
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        if (auto body = unseal(line))
            out.push_back(*body);
        else
            ++ignored_;
    }
    return out;
}

bool TableCache::write_file(const std::string& name, const std::string& header, const std::vector<std::string>& lines)
{
    if (!enabled())
        return false;
    fs::path target = fs::path(dir_) / name;
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) {
            warnings_.push_back("cannot write cache file " + target.string() + "; continuing without cache");
            return false;
        }
        out << header << '\n';
        for (const auto& l : lines)
            out << l << '\n';
        if (!out) {
            warnings_.push_back("cannot write cache file " + target.string() + "; continuing without cache");
            return false;
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        warnings_.push_back("cannot replace cache file " + target.string() + ": " + ec.message());
        fs::remove(tmp, ec);
        return false;
    }
    return true;
}

namespace {

std::optional<std::pair<AdemKey, std::vector<std::pair<Word, uint32_t>>>> parse_adem(const std::string& body)
{
    std::istringstream in(body);
    int p = 0, a = 0, b = 0;
    std::string kind;
    if (!(in >> p >> kind >> a >> b) || (kind != "P" && kind != "B") || !is_prime(p) || a <= 0 || b <= 0)
        return std::nullopt;
    AdemKey key{p, kind[0], a, b};
    const Bidegree want = bidegree(kind == "P" ? Word{a, b} : Word{a, kBeta, b}, p);
    std::vector<std::pair<Word, uint32_t>> terms;
    for (std::string tok; in >> tok;) {
        auto colon = tok.find(':');
        if (colon == std::string::npos)
            return std::nullopt;
        auto w = decode_word(tok.substr(0, colon));
        std::string cs = tok.substr(colon + 1);
        if (!w || cs.empty() || cs.size() > 9 || cs.find_first_not_of("0123456789") != std::string::npos)
            return std::nullopt;
        uint32_t c = uint32_t(std::stoul(cs));
        if (c == 0 || c >= uint32_t(p) || !is_admissible(*w, p) || bidegree(*w, p) != want)
            return std::nullopt;
        terms.emplace_back(*w, c);
    }
    return std::pair{key, terms};
}

std::string adem_body(const AdemKey& k, const std::vector<std::pair<Word, uint32_t>>& terms)
{
    std::string s = std::to_string(k.p) + " " + std::string(1, k.kind) + " " + std::to_string(k.a) + " " +
                    std::to_string(k.b);
    for (const auto& [w, c] : terms)
        s += " " + encode_word(w) + ":" + std::to_string(c);
    return s;
}

}  // namespace

void TableCache::load_adem()
{
    for (const auto& body : read_entries("adem.txt", header_line("adem"))) {
        if (auto entry = parse_adem(body))
            adem_memo_insert(entry->first, entry->second);
        else
            ++ignored_;
    }
}

void TableCache::store_adem()
{
    if (!enabled())
        return;
    auto snapshot = adem_memo_snapshot();
    for (const auto& body : read_entries("adem.txt", header_line("adem")))
        if (auto entry = parse_adem(body))
            snapshot.try_emplace(entry->first, entry->second);
    std::vector<std::string> lines;
    for (const auto& [k, terms] : snapshot)
        lines.push_back(seal(adem_body(k, terms)));
    write_file("adem.txt", header_line("adem"), lines);
}

std::map<int, std::vector<Word>>& TableCache::basis_table(Prime p)
{
    const int pv = p.value();
    auto& table = basis_[pv];
    if (!basis_loaded_[pv]) {
        basis_loaded_[pv] = true;
        for (const auto& body : read_entries("basis-p" + std::to_string(pv) + ".txt", header_line("basis"))) {
            std::istringstream in(body);
            int ep = 0, t = -1;
            std::size_t n = 0;
            bool ok = bool(in >> ep >> t >> n) && ep == pv && t >= 0;
            std::vector<Word> words;
            for (std::string tok; ok && in >> tok;) {
                auto w = decode_word(tok);
                ok = w && is_admissible(*w, pv) && bidegree(*w, pv).t == t;
                if (ok)
                    words.push_back(*w);
            }
            if (!ok || words.size() != n) {
                ++ignored_;
                continue;
            }
            table[t] = std::move(words);
        }
    }
    return table;
}

std::optional<std::vector<Word>> TableCache::basis(Prime p, int t)
{
    if (!enabled())
        return std::nullopt;
    auto& table = basis_table(p);
    auto it = table.find(t);
    if (it == table.end())
        return std::nullopt;
    return it->second;
}

void TableCache::put_basis(Prime p, int t, const std::vector<Word>& words)
{
    if (!enabled())
        return;
    auto& table = basis_table(p);
    auto [it, inserted] = table.try_emplace(t, words);
    if (inserted || it->second != words) {
        it->second = words;
        basis_dirty_[p.value()] = true;
    }
}

void TableCache::flush()
{
    if (!enabled())
        return;
    for (auto& [pv, dirty] : basis_dirty_) {
        if (!dirty)
            continue;
        std::vector<std::string> lines;
        for (const auto& [t, words] : basis_[pv]) {
            std::string body = std::to_string(pv) + " " + std::to_string(t) + " " + std::to_string(words.size());
            for (const auto& w : words)
                body += " " + encode_word(w);
            lines.push_back(seal(body));
        }
        write_file("basis-p" + std::to_string(pv) + ".txt", header_line("basis"), lines);
        dirty = false;
    }
}

}  // namespace steenrod
