#pragma once

#include <array>
#include <string_view>

namespace kwpos {

// Fixed filler vocabulary for the constructive generator. Plain lowercase
// ASCII letters only, so every entry tokenizes to itself.
inline constexpr std::array<std::string_view, 1000> kFillerLexicon = {
    "babide", "babon", "badafus", "baka", "bakile", "balemi", "bapibo",
    "barinon", "bata", "bavito", "bavopus", "bazare", "bazeron", "bazogu",
    "bazol", "befaru", "befegi", "bekizo", "bemeka", "benozu", "benu", "bero",
    "besima", "besor", "betamo", "betepas", "beti", "beveze", "bidu",
    "bigevo", "bikatus", "bimaso", "bimebar", "binu", "biti", "bivado",
    "bizida", "bizitu", "bizuber", "bobima", "bogale", "bogu", "bolil",
    "bolis", "borufa", "bosona", "bote", "botesu", "botiva", "bovu", "bozari",
    "bozome", "bufemo", "bufu", "bufunon", "bufusen", "bugilo", "bugipi",
    "bukuva", "bulave", "bumona", "bunatu", "bupi", "bupolal", "buragu",
    "busel", "bute", "butiza", "buvasu", "buzudo", "buzusu", "dafeli",
    "dagetin", "dagota", "dagufis", "dala", "dalamor", "damazil", "dame",
    "dames", "damusa", "dapeno", "datese", "davigu", "davo", "debe",
    "dedabas", "dedizi", "defitir", "dekuler", "dekur", "delas", "dele",
    "deni", "depafi", "deras", "devono", "difapo", "difave", "dife", "dika",
    "dikasu", "dilu", "diroral", "disegos", "ditafin", "ditagi", "ditege",
    "diza", "dizane", "dizis", "dode", "dogepa", "dogi", "doker", "dolovo",
    "dora", "doroka", "dorupu", "dosanis", "dososa", "dotozen", "dozesu",
    "dubolo", "duboro", "dufir", "dukazin", "dunere", "dunu", "durora",
    "duruvi", "dusode", "dusovo", "duvola", "fadoze", "fadudo", "fafune",
    "fakasu", "fakuzu", "falu", "famide", "famu", "famusi", "fana", "fanesu",
    "fanofu", "fapu", "faraza", "faresor", "faro", "fasi", "fasofe", "fatamo",
    "favi", "favolu", "fefife", "felo", "femuda", "femudo", "fena", "fenefi",
    "fenope", "fenubel", "fepu", "ferefas", "feri", "fetumi", "fevo", "fezin",
    "fibimi", "fifur", "figika", "fikaros", "fikato", "filalo", "filove",
    "fimo", "finir", "fipitu", "firaton", "fisono", "fitaku", "fitin",
    "fitito", "fiziso", "fizivos", "fizo", "fobilen", "fobiman", "fobipe",
    "fobu", "fodon", "fofela", "fokadi", "fokaze", "fologo", "fomugul",
    "fotabis", "fotutir", "fubalas", "fubebo", "fuge", "fugupol", "fuki",
    "fulegal", "fumifo", "fupen", "fura", "fusi", "futi", "futitus", "futoso",
    "fuvoko", "fuvoro", "fuza", "gabifa", "gafagi", "gafivi", "gagiges",
    "gakurin", "galoni", "gamas", "gapo", "gare", "gasor", "gatake", "gatozu",
    "gavasu", "gaziza", "gazuki", "gebimu", "gedadin", "gefen", "gefofus",
    "gegapon", "gemiri", "gemobur", "genopa", "geruku", "gesaper", "getamal",
    "getedo", "gezepu", "gidizi", "gifipu", "gifo", "gige", "gikis", "giluze",
    "gini", "gipela", "gipuro", "giti", "givika", "gobegi", "gofeter",
    "goguka", "golive", "gonizi", "gonu", "gopu", "gosi", "gosipi", "goso",
    "gosul", "gotefar", "gotur", "govi", "govotal", "gubifu", "gubos",
    "gubulu", "gumegol", "gusus", "guti", "gutikin", "gutote", "guvobu",
    "kabo", "kabono", "kada", "kafata", "kafis", "kagala", "kage", "kagefol",
    "kagise", "kago", "kamega", "kapakun", "kapi", "karenil", "kasa",
    "kasorar", "kata", "kavofar", "keber", "kebo", "kedasan", "kedofo",
    "keleti", "kelu", "keni", "kepobu", "keseti", "ketami", "keveris",
    "kezoka", "kidotu", "kifipe", "kigi", "kigitel", "kigizu", "kikaga",
    "kikese", "kikoge", "kimazos", "kimumo", "kinefal", "kipizol", "kireba",
    "kirino", "kivemul", "kivesar", "kivifo", "kivose", "kivu", "kobasu",
    "kobuse", "kokaku", "kokoka", "kolodar", "komifu", "komone", "komuba",
    "konamo", "kopa", "kopoma", "korimi", "kotebi", "kotobi", "kova", "kove",
    "koze", "kubamu", "kubudu", "kudafo", "kudilir", "kufimul", "kufon",
    "kugago", "kulapi", "kumidal", "kumovi", "kuninin", "kupi", "kupu",
    "kuputo", "kurason", "kurifa", "kuriso", "kurokar", "kusanun", "kusesu",
    "labope", "ladi", "ladul", "ladure", "lafa", "lafevor", "lagati",
    "lagogi", "laku", "laleni", "lalino", "lalu", "lamun", "lanu", "lanus",
    "lapu", "lapus", "larale", "lari", "laseto", "lasobi", "latope", "lavopa",
    "lazubo", "lebil", "ledoze", "legapar", "legosul", "leguru", "leka",
    "lele", "lelopa", "lepozin", "lepu", "leribo", "leros", "lesomu",
    "letilo", "levapi", "lezeke", "lezupir", "libage", "lifoba", "likir",
    "lilekul", "limega", "limisi", "lipas", "lipisa", "lisofa", "lisuden",
    "lisul", "liti", "lizene", "lizetu", "lodevu", "lofe", "lokador", "loki",
    "lomamar", "lonafa", "loni", "loren", "losu", "losuso", "loti", "lovo",
    "lovur", "lubu", "ludavor", "ludepi", "lufani", "lugofe", "lukuvin",
    "lulidi", "lume", "lunilor", "lupa", "lupes", "lupi", "lupite", "lurodi",
    "lusinos", "lusu", "lutodan", "luviga", "luvuru", "madige", "mafike",
    "mafodo", "maniva", "mapefi", "mapun", "marabi", "masafil", "maseso",
    "matifir", "mazimur", "medo", "medobi", "meke", "mekenol", "meli", "memu",
    "mene", "mepilos", "mepu", "mevafa", "mevito", "mevu", "meze", "mezi",
    "midagi", "mike", "mikidu", "miko", "milebe", "mimolas", "mipeda",
    "misubu", "mitaso", "modaka", "modis", "module", "mofu", "mofupol",
    "mome", "mopo", "mopodu", "moriku", "moruda", "moruta", "movito", "muda",
    "mufuki", "mulegu", "muli", "munamor", "mupegi", "mupur", "musima",
    "musinu", "musotil", "nabi", "nafabas", "nafevol", "nagopu", "nalabo",
    "nameti", "nanovos", "napagu", "nasa", "nasalo", "nasivo", "nazuro",
    "nebufu", "nefemel", "neko", "nemu", "nepube", "nerezon", "neriras",
    "nesogu", "netul", "nevos", "nezeso", "nife", "nifuman", "nilito",
    "ninon", "nire", "nires", "nisami", "nise", "nisilu", "nitida", "nizel",
    "nofiki", "nofone", "noga", "nogavo", "nogur", "nokavo", "noke", "nolepe",
    "nomir", "noni", "nopabe", "norara", "noron", "noropi", "norufe", "nosa",
    "notutin", "nubapis", "nubizi", "nudolo", "nulati", "nuli", "numesul",
    "nupude", "nutas", "nuvage", "nuvo", "nuvulu", "nuzeko", "padoto", "padu",
    "pagila", "pakafe", "palagi", "pamo", "pamol", "panemar", "papuge",
    "pasin", "patel", "pazagu", "peda", "pedeli", "pefar", "pega", "pegido",
    "pegun", "pekedu", "pemanus", "pemen", "pemo", "pepopi", "pepupa",
    "peras", "perolor", "peso", "pevel", "pezo", "piboge", "pipero", "pipimi",
    "pipo", "piro", "pisi", "piso", "pizelul", "pobobe", "podis", "podulu",
    "pofige", "pokuvel", "polar", "polaso", "poli", "pomul", "poruke",
    "posoda", "pudu", "pufomis", "punun", "pupaber", "pupiki", "purusa",
    "pusiso", "pusomi", "puvufi", "puzeben", "radafa", "rafido", "rafinol",
    "raki", "ralulo", "rapi", "rapipu", "rare", "ratabi", "ratanel", "raten",
    "rato", "ratoga", "razi", "razuvi", "reken", "repopa", "repuga",
    "resiles", "resurul", "ribosil", "rifebo", "rifefe", "rigado", "rigas",
    "rigofu", "rigu", "rile", "rilusu", "rimeza", "rinobe", "riparil",
    "ripelo", "ripo", "risapis", "risefa", "rita", "ritafe", "rizo", "robagu",
    "rode", "rodus", "roguvu", "rokava", "roku", "rolen", "roman", "romufel",
    "ropa", "rorita", "roso", "rosomos", "rosudi", "rotilu", "roton",
    "rubape", "rubon", "rubono", "rudepel", "ruduku", "rufafo", "rufagi",
    "ruka", "ruki", "rukinan", "rumi", "runogo", "rupevur", "rupogun", "ruru",
    "rusaru", "rusife", "ruvekil", "sabekos", "safi", "sameka", "samikur",
    "sapake", "sarobi", "sarur", "sasudi", "satagu", "sazobi", "sebi",
    "sebido", "seda", "sefus", "segezil", "segunus", "segutor", "selur",
    "seneru", "senigi", "sesepo", "sevi", "sezebul", "sezorus", "siboko",
    "side", "sifuros", "sigeful", "sigu", "sileve", "silide", "sinovo",
    "sirugu", "sisuka", "sitor", "sizaro", "sobi", "sobona", "sodena", "sodi",
    "sogasa", "solitul", "sonetu", "sono", "sopifas", "sopite", "sopobo",
    "sorizi", "sosula", "sozipin", "suberu", "sudo", "sugi", "sukovu",
    "sumugi", "supita", "supo", "surofal", "suruto", "suvide", "suzuno",
    "tabe", "taduro", "tafere", "tafuge", "tako", "takoma", "talisos",
    "tamuvel", "tanapo", "tanasen", "tanunan", "tapaben", "tapalu", "tapes",
    "tasula", "tasulan", "tavuso", "tebima", "tedomi", "tedoper", "tefido",
    "tefumu", "tegemu", "teguti", "teke", "tekuvon", "temagir", "teme",
    "tezumo", "tibi", "tidatan", "tigano", "tigigar", "timode", "tinoka",
    "tipagi", "tira", "tise", "titesu", "tiviles", "tivira", "tizeve",
    "tobazi", "tobo", "todi", "todimar", "todu", "tofa", "tofekul", "tofis",
    "tofuvur", "togu", "tokirir", "toku", "tomugo", "tomuso", "toni",
    "torasu", "torazol", "toritus", "tose", "tubita", "tubuve", "tufefe",
    "tufetil", "tulikes", "tulipa", "tumakar", "tupimo", "tupomu", "tusovo",
    "tusu", "tuvo", "tuzozon", "vabepal", "vadoki", "vafo", "vafuden",
    "vafuzu", "vagunon", "vala", "valamol", "valepis", "vamiron", "vanalu",
    "vanava", "vanodur", "vanuzi", "varufan", "vatade", "vaton", "vavulu",
    "vebe", "vedafo", "vedeze", "vega", "vemasu", "vemisu", "venezo",
    "venora", "vepuna", "veva", "vevukis", "vezoken", "vezu", "vidal",
    "vidibel", "vidiga", "vidipe", "vifeko", "vifipi", "vifize", "vigazun",
    "vigu", "vikafo", "vilus", "vime", "vimemun", "virakon", "vita",
    "vitenil", "viti", "vitisu", "vitoni", "vitutin", "vivaba", "vive",
    "vobi", "voda", "vodis", "voge", "vogizu", "volire", "vonar", "voni",
    "vonizel", "vonomen", "vopi", "vosova", "vosumar", "votebe", "votu",
    "vozasi", "vozo", "vufiri", "vufotu", "vuga", "vuke", "vuku", "vulu",
    "vuma", "vunar", "vusas", "vutota", "vutufor", "vuvazi", "vuvigil",
    "vuzomu", "zabagu", "zabasu", "zadedor", "zaguni", "zakabil", "zalanu",
    "zamofi", "zanemi", "zano", "zare", "zareti", "zarolal", "zarube",
    "zaseban", "zebe", "zedezel", "zediso", "zeful", "zegami", "zegatu",
    "zegigo", "zelate", "zelu", "zema", "zemiba", "zemotu", "zenul", "zepe",
    "zepelos", "zerapi", "zerisu", "zeso", "zidepe", "zifiral", "zifofal",
    "zikeli", "zikenu", "zimena", "zimoner", "zinazen", "zipefo", "zirekis",
    "zival", "zivi", "zobe", "zobedi", "zoberar", "zobu", "zodefur", "zofa",
    "zofido", "zokade", "zokegun", "zokobi", "zomas", "zomul", "zonodel",
    "zopafal", "zopifas", "zoputo", "zosozer", "zosus", "zoto", "zovaro",
    "zove", "zozo", "zubomor", "zudis", "zufisu", "zufo", "zugan", "zune",
    "zunune", "zupatu", "zutader", "zutasi", "zuto", "zutulu", "zuvuza",
    "zuzital",
};

}  // namespace kwpos
