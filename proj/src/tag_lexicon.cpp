// Bundled coarse-tag lexicon for the builtin tagger. Each group lists words
// whose most frequent coarse tag is the first letter of the group code; a
// second letter gives the runner-up tag consulted by the context rules.
// N noun, V verb, A adjective, R adverb, O other.

#include <string_view>
#include <unordered_map>

#include "lebkit/text.hpp"

namespace lebkit::detail {

namespace {

struct Group {
  std::string_view code;
  std::string_view words;
};

constexpr Group kGroups[] = {
    {"O", R"(
a an the this that these those my your his her its our their mine yours hers
ours theirs i me you he him she we us they them it myself yourself himself
herself itself ourselves yourselves themselves oneself who whom whose which
what whatever whoever whichever someone somebody something anyone anybody
anything everyone everybody everything nobody nothing none noone one ones
and or but nor because although though while whilst if unless until till
since whereas whether than as of in on at by for with without within about
against between among amongst into onto upon through throughout during before
after above below beneath under underneath over to from up down out off
across along around behind beside besides beyond despite except inside
outside near toward towards via per unlike plus amid
be am is are was were been being do does did doing can could will would
shall should may might must ought 'll 'd 've 's 're 'm n't not ca wo sha
two three four five six seven eight nine ten eleven twelve thirteen fourteen
fifteen sixteen seventeen eighteen nineteen twenty thirty forty fifty sixty
seventy eighty ninety hundred thousand million billion zero
there when where whenever wherever each every either neither both all any
some another such no oh yes yeah hey wow okay ok please hello hi thanks lol
whereby wherein hers ya y'all
)"},
    {"R", R"(
so then also just only even still already ever never always often sometimes
usually rarely seldom very really quite rather too almost nearly here now
today together away again ago else instead perhaps maybe probably actually
especially however therefore thus otherwise anyway everywhere somewhere
anywhere nowhere abroad indeed certainly later soon once twice yet forward
apart enough well how why back mostly mainly simply truly clearly finally
generally frequently constantly carefully quickly slowly easily quietly
loudly fluently patiently perfectly safely barely hardly nearly exactly
absolutely completely entirely totally fully highly deeply strongly
particularly typically naturally seriously honestly literally basically
definitely obviously apparently eventually immediately recently currently
originally occasionally regularly normally gently proudly warmly happily
sadly badly kindly openly firmly freely fairly nearly nevertheless
moreover furthermore meanwhile afterwards sometime somehow anyhow overseas
upstairs downstairs outdoors indoors online ahead aside nonetheless
increasingly rapidly closely directly properly truly heavily lightly
precisely accurately punctually consistently genuinely tirelessly
passionately effortlessly diligently meticulously
)"},
    {"N", R"(
time person people man woman child boy girl baby kid family friend mother
father parent brother sister son daughter husband wife grandmother grandfather
grandma grandpa aunt uncle cousin neighbor neighbour colleague boss partner
teacher student doctor nurse engineer lawyer chef farmer artist musician
writer scientist soldier veteran pilot driver worker manager accountant
programmer developer designer librarian waiter waitress firefighter officer
police policeman judge priest pastor professor researcher journalist author
singer dancer actor actress athlete player coach mechanic plumber electrician
carpenter builder cashier clerk secretary assistant consultant therapist
dentist surgeon pharmacist banker entrepreneur businessman businesswoman
salesman customer client patient? volunteer? immigrant refugee citizen
millennial boomer zoomer teenager teen adult elder youth gentleman lady guy
individual community society culture country nation city town village
state region area place world home house apartment room kitchen bedroom
garden yard street road car truck bus train plane bike bicycle boat ship
office school university college church hospital shop store market restaurant
cafe bar park beach lake river sea ocean mountain hill forest desert island
coast field farm ranch garage museum library theater theatre stadium gym
bank company business job career profession industry money price cost
food meal breakfast lunch dinner bread cheese meat chicken beef pork fish?
rice pasta pizza burger sandwich soup salad fruit apple banana orange? vegetable
potato tomato onion garlic pepper sugar salt butter milk egg chocolate cake
cookie tea coffee beer wine water juice alcohol basil sauce spice curry taco
sushi noodle steak sausage bacon cereal
day week month year hour minute second? morning afternoon evening night
weekend holiday birthday anniversary season summer winter spring? autumn fall?
sunday monday tuesday wednesday thursday friday saturday january february
march? april may? june july august september october november december
moment period century decade future past? history childhood life death
body head face eye ear nose mouth hair hand arm leg foot finger skin heart
brain blood voice smile? accent language word sentence name story book poem
novel newspaper magazine letter note message email phone computer internet
game sport football soccer basketball baseball tennis golf music song guitar
piano violin drum movie film show television tv radio art painting picture
photo camera dog cat horse bird cow pig sheep animal pet mouse spider insect
tree flower plant grass rock stone wood metal glass paper plastic gold silver
weather rain snow sun wind sky star moon fire light heat air
clothes shirt dress? suit jacket coat shoe hat sweater jeans jewelry ring
thing stuff idea thought opinion belief value attitude feeling emotion mood
problem issue question? answer? reason way part kind? type sort group team
class member leader government politics policy party law rule right war
peace power freedom religion god faith tradition custom habit hobby interest?
skill talent ability knowledge education experience? science math mathematics
biology chemistry physics history geography english grammar subject lesson
course degree exam test homework project task work? job duty responsibility
detail fact information data number amount level rate percent lot bit piece
side end beginning middle top bottom front edge corner center centre
stereotype attribute category characteristic trait behavior behaviour
personality identity character quality nature heritage background origin
generation age gender race ethnicity nationality sign zodiac astrology
mind soul spirit heart love? hate? fear? joy happiness sadness anger pride
respect kindness honesty patience loyalty courage strength weakness
punctuality efficiency precision reliability discipline humor humour
sense passion dedication commitment effort success failure goal dream
chance opportunity challenge difficulty situation condition environment
meeting event party? celebration festival wedding funeral trip travel
vacation journey visit? tour adventure
shift mile kilometer pound dollar euro system service support? health
medicine disease illness pain energy noise sound silence attention
grudge pottery mural coin stamp sunrise sunset midnight noon choir
vegetable bicycle tomato hair kitchen desk chair table bed window door wall
floor roof step stairs neighborhood neighbourhood crowd concert student
introvert extrovert gamer redhead nerd geek stoner hipster
software hardware technology machine tool device
minute majority minority population example case point? situation
)"},
    {"V", R"(
have go come get make take give know think see look want use find tell ask seem
say
feel try leave call keep let begin become show hear play? run? move live
believe bring happen write provide sit stand lose pay meet include continue
set learn lead understand watch follow stop create speak read allow add spend
grow open? walk? win offer remember consider appear buy wait serve die send
expect build stay fall cut reach kill remain suggest raise pass sell require
report? decide pull apologize apologise admire arrive forget hold cry afford
prepare enjoy wake knit fix celebrate hate? love? prefer eat drink? cook?
bake sew sing dance? swim listen land? collect repair avoid save teach
travel? talk? argue smile? burn trust? own organize organise wear drive
carry describe explain enter introduce imagine tend treat understand
discover protect produce receive develop involve contain achieve exist
refuse complain behave respond belong deserve hope? wish need? manage
recognize recognise notice hide hurt laugh marry worry bother care? miss
accept agree disagree choose finish join catch throw hit kick climb jump
climb clean? dress? shout scream whisper pray vote hunt fish? hike ski
paint? draw? study? practice? practise visit? shop? change? help? plan?
work? question? interest? experience? design? express relax rest? struggle
succeed fail fight? drop enter borrow lend steal break shake
shine sleep dream? gather attend complete improve increase reduce
support? solve share? compete rely respect? value? judge? assume
stereotype? associate label? identify
)"},
    {"A", R"(
good bad new old young great big small large little long? short high? low?
important different same other own able early? late? right? wrong real best
better worse worst sure free? full true false whole certain clear public
private special strong weak hot cold warm cool nice kind beautiful pretty
ugly happy sad angry proud afraid scared tired busy ready simple easy
difficult hard? soft quiet loud calm rich poor cheap expensive fresh dry wet
clean? dirty safe dangerous healthy sick ill dead alive black white red blue
green yellow brown grey gray pink purple orange? dark? bright light? heavy
thin fat tall fast? slow quick smart clever stupid funny serious polite rude
friendly lazy punctual reliable honest loyal generous selfish shy brave
careful careless organized organised efficient precise strict punctual
emotional rational logical creative artistic athletic religious political
social cultural national local international global foreign native
traditional modern typical common rare unique usual unusual normal strange
weird crazy famous popular successful professional personal human natural
physical mental spicy sweet sour bitter salty delicious tasty
excited interested bored worried surprised confused married single divorced
elderly vegan vegetarian blind deaf disabled autistic gay straight? lesbian
bisexual transgender male female masculine feminine
german canadian american mexican british english irish scottish welsh french
italian spanish portuguese dutch swedish norwegian danish finnish russian
polish greek turkish chinese japanese korean indian pakistani asian african
european australian brazilian argentinian colombian cuban jamaican nigerian
egyptian arab arabic jewish muslim christian catholic hindu buddhist latino
latina hispanic caucasian southern northern western eastern midwestern
wooden final last next previous main major minor entire various
several many few much more most less least enough? whole ancient colorful
colourful crowded particular specific general certain possible impossible
likely unlikely available necessary recent current present? future? past?
middle? similar main economic financial medical legal military educational
independent hardworking diligent meticulous open-minded outgoing talkative
introverted extroverted stubborn patient? impatient competitive ambitious
confident independent dependent sensitive romantic passionate cheerful
curious thoughtful respectful considerate humble arrogant aggressive gentle
tough messy neat tidy efficient frugal cheap thrifty stingy wealthy
)"},
    {"NV", R"(
work water plan fish garden name face book place point hand head interest
experience question answer fear design practice paint report support
shop value judge label match joke stamp display volunteer picture dress
stereotype rock bank wall party visit trip rest fight share dream light
)"},
    {"VN", R"(
love hate play run walk drink cook help dance change smile hope need care
study promise trust visit talk travel draw land check repair cry laugh
look use call show move stay try cut win kiss hug shop sleep
)"},
    {"AN", R"(
patient
)"},
    {"AV", R"(
clean open correct free
)"},
    {"AR", R"(
early late fast hard high low long straight daily weekly monthly
)"},
};

const std::unordered_map<std::string, LexiconEntry>& table() {
  static const auto* t = [] {
    auto* m = new std::unordered_map<std::string, LexiconEntry>();
    auto tag_of = [](char c) {
      switch (c) {
        case 'N': return Pos::Noun;
        case 'V': return Pos::Verb;
        case 'A': return Pos::Adjective;
        case 'R': return Pos::Adverb;
        default: return Pos::Other;
      }
    };
    for (const auto& g : kGroups) {
      LexiconEntry e;
      e.primary = tag_of(g.code[0]);
      if (g.code.size() > 1) {
        e.alternate = tag_of(g.code[1]);
        e.has_alternate = true;
      }
      for (auto& w : split_whitespace(g.words)) {
        // A trailing '?' means: keep an earlier entry for this word if any.
        if (!w.empty() && w.back() == '?') {
          w.pop_back();
          if (m->count(w)) continue;
          m->emplace(w, e);
          continue;
        }
        (*m)[w] = e;
      }
    }
    return m;
  }();
  return *t;
}

}  // namespace

const LexiconEntry* lookup_tag_lexicon(std::string_view word) {
  const auto& t = table();
  auto it = t.find(std::string(word));
  return it == t.end() ? nullptr : &it->second;
}

std::size_t tag_lexicon_size() { return table().size(); }

}  // namespace lebkit::detail
