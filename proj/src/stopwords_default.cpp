// SPDX-License-Identifier: Apache-2.0

#include "sinyal/textpipe.hpp"

#include <sstream>

namespace sinyal {

namespace {

// Keep in sync with data/stopwords_id.txt (a test enforces equality).
constexpr const char* kDefaultStopwords = R"(
ada adalah agar aja akan aku anda apa apakah atau
bagaimana bagi bahwa banget banyak baru begitu belum berapa biar
bisa boleh buat bukan dah dan dapat dari dengan deh
di dia dong dulu gak gimana gitu gua gue hanya
harus ini itu iya jadi jangan jika juga kak kalau
kali kalo kami kamu kan kapan karena kayak ke kemana
kenapa kita kok lagi lah lain lalu lebih lho lo
loh lu mana masih mau memang mereka mungkin nanti nggak
nih oleh pada para pasti pengen per pun saat saja
sama sampai sangat saya sebagai sedang segera sekarang semua seperti
sering sini situ suka sudah tapi tau telah tentang terus
tetapi tidak trus tuh udah untuk wkwk ya yang yg
)";

} // namespace

const StopwordSet& default_stopwords() {
    static const StopwordSet words = [] {
        StopwordSet set;
        std::istringstream in(kDefaultStopwords);
        std::string word;
        while (in >> word) set.insert(word);
        return set;
    }();
    return words;
}

} // namespace sinyal
