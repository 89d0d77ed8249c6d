#pragma once

#include "steenrod/operation.h"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace steenrod {

constexpr const char* kCacheEnvVar = "STEENROD_CACHE_DIR";
constexpr int kCacheVersion = 1;

/*
 * Persistent tables of Adem expansions and admissible bases, one plain-text file per kind:
 *
 *   adem.txt         header "steenrod-cache adem 1", then one entry per line:
 *                    <p> <P|B> <a> <b> <word>:<coef> ... #<fnv1a-64 hex>
 *   basis-p<p>.txt   header "steenrod-cache basis 1", then one entry per line:
 *                    <p> <t> <count> <word> ... #<fnv1a-64 hex>
 *
 * A word is its letters joined by '.', with 'b' for the Bockstein and "e" for the empty word.
 * The checksum covers the entry text before " #". Entries that fail to parse, fail the checksum
 * or sit under a different header version are ignored and recomputed.
 */
class TableCache {
public:
    /* Directory from the flag, else the environment; "none" or empty disables the cache. */
    static std::string resolve_dir(const std::optional<std::string>& flag);

    explicit TableCache(std::string dir);

    bool enabled() const { return !dir_.empty(); }
    const std::string& dir() const { return dir_; }
    const std::vector<std::string>& warnings() const { return warnings_; }
    int ignored_entries() const { return ignored_; }

    /* Loads valid Adem entries into the shared memo. */
    void load_adem();
    /* Writes the shared memo, merged with what is on disk. */
    void store_adem();

    std::optional<std::vector<Word>> basis(Prime p, int t);
    void put_basis(Prime p, int t, const std::vector<Word>& words);
    /* Writes pending basis entries. */
    void flush();

private:
    std::map<int, std::vector<Word>>& basis_table(Prime p);
    bool write_file(const std::string& name, const std::string& header, const std::vector<std::string>& lines);
    std::vector<std::string> read_entries(const std::string& name, const std::string& header);

    std::string dir_;
    std::vector<std::string> warnings_;
    int ignored_ = 0;
    std::map<int, std::map<int, std::vector<Word>>> basis_;
    std::map<int, bool> basis_loaded_;
    std::map<int, bool> basis_dirty_;
};

std::string encode_word(const Word& w);
std::optional<Word> decode_word(const std::string& s);
uint64_t fnv1a(const std::string& s);

}  // namespace steenrod
