#!/usr/bin/env python3
"""One-time emitter for transcripts.fixture.jsonl (kept for provenance)."""
import json

RAR = 'Rephrase and expand the question, and respond.'
USE = 'Use your answer for the rephrased question to answer the original question.'
YN = ' Answer the Yes or No question.'

items = []


def add(table, task, question, response, gold, wrong, auto, printed):
    items.append({
        'table': table, 'task': task, 'question': question, 'response': response,
        'gold': gold, 'wrong': wrong, 'expected_auto': auto, 'printed_label': printed,
    })


def yes_no(table, question, response, gold, auto, printed):
    wrong = ['no'] if gold == 'yes' else ['yes']
    add(table, TASK, question, response, [gold], wrong, auto, printed)


# ---------------- Even day ----------------
TASK = 'even_day'
people = [
    ('Barack Obama', 'yes'), ('Kanye West', 'yes'), ('Stephen Hawking', 'yes'),
    ('Frida Kahlo', 'yes'), ('Leonardo da Vinci', 'no'), ('Ludwig van Beethoven', 'no'),
]
orig_q = {p: f'Was {p} born in an even day?' for p, _ in people}

orig_resp = {
    'Barack Obama': 'No, Barack Obama was born on August 4, 1961, which is an even date but an odd day.',
    'Kanye West': 'No, Kanye West was born on June 8, 1977, which is an even day.',
    'Stephen Hawking': 'No, Stephen Hawking was born on January 8, 1942. Though the day, 8th, is an even number, the term "even day" isn\'t typically used to describe dates.',
    'Frida Kahlo': 'No, Frida Kahlo was born on July 6, 1907. Therefore, she was born on an odd day.',
    'Leonardo da Vinci': 'No, Leonardo da Vinci was born on April 15, 1452, which is an odd day.',
    'Ludwig van Beethoven': 'No, Ludwig van Beethoven was born on December 17, 1770, which is an odd day.',
}
orig_label = {'Barack Obama': ('incorrect', 'incorrect'), 'Kanye West': ('incorrect', 'incorrect'),
              'Stephen Hawking': ('incorrect', 'incorrect'), 'Frida Kahlo': ('incorrect', 'incorrect'),
              'Leonardo da Vinci': ('correct', 'correct'), 'Ludwig van Beethoven': ('correct', 'correct')}
for p, gold in people:
    auto, printed = orig_label[p]
    yes_no('even_day_original', orig_q[p], orig_resp[p], gold, auto, printed)

rar_resp = {
    'Barack Obama': '"Did the former United States President, Barack Obama, have his birthday fall on an even numbered day of a month?" Barack Obama was born on August 4, 1961. So yes, he was born on an even numbered day.',
    'Kanye West': 'The question asks, "Was the day of Kanye West\'s birth an even-numbered day?" Kanye West was born on June 8, 1977. Thus, yes, he was born on an even day, the 8th of June.',
    'Stephen Hawking': 'The expanded version of the question could be phrased as, "Was renowned physicist and author Stephen Hawking born on a date that is classified as an even day?". Stephen Hawking was born on January 8, 1942, so the answer is yes; he was born on an even day.',
    'Frida Kahlo': '"Did the famous Mexican artist Frida Kahlo have her birth date fall on an even numbered day of the month?" Yes, she was. Frida Kahlo was born on July 6th, 1907, which is an even day of the month.',
    'Leonardo da Vinci': '"Did the day of birth for the renowned artist and inventor, Leonardo da Vinci, fall on an even-numbered day?" Yes, Leonardo da Vinci was born on April 15, 1452, which is an odd-numbered day.',
    'Ludwig van Beethoven': '"Was the celebrated composer Ludwig van Beethoven born on a day that falls under an even-numbered date?" Ludwig van Beethoven was born on December 17, 1770. Since 17 is an odd number, the answer is no, Beethoven was not born on an even day.',
}
rar_label = {'Barack Obama': ('correct', 'correct'), 'Kanye West': ('correct', 'correct'),
             'Stephen Hawking': ('correct', 'correct'), 'Frida Kahlo': ('correct', 'correct'),
             'Leonardo da Vinci': ('incorrect', 'incorrect'), 'Ludwig van Beethoven': ('correct', 'correct')}
for p, gold in people:
    auto, printed = rar_label[p]
    q = f'"{orig_q[p]}"\n{RAR}'
    yes_no('even_day_rar', q, rar_resp[p], gold, auto, printed)

two_rephrased = {
    'Barack Obama': 'Was the 44th President of the United States, Barack Obama, born on a day of the month that is classified as an even number?',
    'Kanye West': 'Can you tell me if the day of the month on which Kanye West was born falls on an even number?',
    'Stephen Hawking': 'Stephen Hawking, did his birth take place on a day that falls into the category of even numbers?',
    'Frida Kahlo': 'Was the famous artist Frida Kahlo born on a day of the month that is an even number?',
    'Leonardo da Vinci': 'Was the historical figure Leonardo da Vinci, renowned for his artistic and scientific achievements, born on a day that falls under an even number?',
    'Ludwig van Beethoven': 'Did the birth of the famous composer Ludwig van Beethoven fall on a day of the month that is considered an even number?',
}
two_original = dict(orig_q)
two_original['Ludwig van Beethoven'] = (
    'Was the celebrated composer Ludwig van Beethoven born on a day that falls under an even-numbered date?')
two_resp = {
    'Barack Obama': 'No, Barack Obama was not born on an even day. He was born on August 4, 1961.',
    'Kanye West': 'Kanye West was born on June 8, 1977. Since 8 is an even number, the answer to both questions is yes.',
    'Stephen Hawking': 'Stephen Hawking was born on January 8, 1942. Therefore, the answer to both the original and rephrased questions is "yes."',
    'Frida Kahlo': 'Frida Kahlo was born on July 6, 1907. Thus, she was not born on an even day.',
    'Leonardo da Vinci': 'Leonardo da Vinci was born on April 15, 1452. 15 is an odd number, so he was not born on an even day.',
    'Ludwig van Beethoven': 'Ludwig van Beethoven was born on December 17, 1770. 17 is an odd number, not an even one. Therefore, the answer to both the original and rephrased question is no, Ludwig van Beethoven was not born on an even day.',
}
two_label = {'Barack Obama': ('incorrect', 'incorrect'), 'Kanye West': ('correct', 'correct'),
             'Stephen Hawking': ('correct', 'correct'), 'Frida Kahlo': ('needs_review', 'incorrect'),
             'Leonardo da Vinci': ('needs_review', 'correct'), 'Ludwig van Beethoven': ('correct', 'correct')}
for p, gold in people:
    auto, printed = two_label[p]
    q = f'(original) {two_original[p]}\n(rephrased) {two_rephrased[p]}\n{USE}'
    yes_no('even_day_two_step', q, two_resp[p], gold, auto, printed)

# ---------------- Coin flip ----------------
TASK = 'coin_flip'
coin_q = {
    'aluino': 'A coin is heads up. aluino flips the coin. arthor flips the coin.  Is the coin still heads up? Flip means reverse.',
    'jumaimah': 'A coin is heads up. jumaimah flips the coin. buity flips the coin.  Is the coin still heads up? Flip means reverse.',
    'kinta': 'A coin is heads up. kinta does not flip the coin. renit does not flip the coin.  Is the coin still heads up? Flip means reverse.',
    'brandarius': 'A coin is heads up. brandarius does not flip the coin. gitta flips the coin.  Is the coin still heads up? Flip means reverse.',
}
coin_gold = {'aluino': 'yes', 'jumaimah': 'yes', 'kinta': 'yes', 'brandarius': 'no'}
coin_orig_resp = {'aluino': 'No', 'jumaimah': 'No', 'kinta': 'Yes', 'brandarius': 'No.'}
coin_orig_label = {'aluino': ('incorrect', 'incorrect'), 'jumaimah': ('incorrect', 'incorrect'),
                   'kinta': ('correct', 'correct'), 'brandarius': ('correct', 'correct')}
for k in coin_q:
    auto, printed = coin_orig_label[k]
    yes_no('coin_flip_original', coin_q[k] + YN, coin_orig_resp[k], coin_gold[k], auto, printed)

coin_rar_resp = {
    'aluino': 'The coin started out being heads up. Then, Aluino flipped the coin, reversing its side. After that, Arthor also flipped the coin, reversing its side again. Is the coin facing heads up now? Considering the action of flipping the coin means to reverse its side, after two flips, the coin would indeed be back in its original position. So, yes, the coin is still heads up.',
    'jumaimah': 'The coin is initially facing heads up. Then, it is flipped once by Jumaimah and again by Buity. After these two flips, is the coin still facing heads up? Taking into consideration that flipping the coin means to turn it over to its opposite side, the answer is Yes, the coin is still heads up after two flips.',
    'kinta': 'Has the position of the coin, which was initially heads up, changed considering that neither Kinta nor Renit have flipped, implying reversed, the coin? The answer is yes, the coin is still heads up.',
    'brandarius': "Rephrased and expanded question: Initially, the coin was facing heads up. The scenario suggests that brandarius doesn't flip or reverse the coin but gitta does. Considering the definition of the word 'flip' as to reverse, we can understand that a coin flipped changes its position from head to tail or vice versa. So, would the coin maintain its initial position of being heads up after gitta flipped it?Answer: No.",
}
for k in coin_q:
    q = f'"{coin_q[k]}"\n{RAR}{YN}'
    yes_no('coin_flip_rar', q, coin_rar_resp[k], coin_gold[k], 'correct', 'correct')

coin_two_rephrased = {
    'aluino': 'The initial state of a coin is that it is face up with heads. Then, Aluino performs an action of flipping the coin, which implies reversing its current face from heads to tails. Following this, Arthor takes his turn and also flips the coin. Now, can it be determined whether the coin reverts to its original state of being heads up after these sequential flips? Remember, in this context, flipping pertains to reversing the side that the coin is currently showing.',
    'jumaimah': "The initial position of the coin is heads up. Jumaimah proceeds to perform an action on the coin known as a flip, which changes the coin from its current position to its opposite position. Following this, Buity also conducts the same action on the coin as Jumaimah did, which is a flip. With this sequence of events, can we determine if the final position of the coin is still heads up? Remember, the term 'flip' is defined as reversing the current position of the coin.",
    'kinta': "The original question gives us a scenario wherein a coin is initially placed in a heads up position. It also states that two individuals, Kinta and Renit, have not interacted or manipulated the coin, specifically, they have not flipped it. To flip, as described, is to reverse the coin's present state. Considering these points, is the coin's position unchanged and is it still facing heads up?",
    'brandarius': 'The current state of a coin is that it is facing heads up. An individual named brandarius does not alter this state by flipping the coin. However, another individual named gitta does change the state of the coin by flipping it. A flip in this context refers to reversing the side of the coin that is facing up. Hence, is it possible that following gitta\'s action on the coin, it remains heads up?',
}
coin_two_resp = {'aluino': 'Yes.', 'jumaimah': 'Yes.', 'kinta': 'Yes.', 'brandarius': 'No.'}
for k in coin_q:
    q = f'(original) {coin_q[k]}\n(rephrased) {coin_two_rephrased[k]}\n{USE}{YN}'
    yes_no('coin_flip_two_step', q, coin_two_resp[k], coin_gold[k], 'correct', 'correct')

# ---------------- Last letter (2) ----------------
TASK = 'last_letter2'
ll_pairs = ['Beth Joel', 'Patrick Lorena', 'Edgar Bob', 'Alexandra Betty', 'Paul Liz', 'Sheila Alberto']
ll_gold = {'Beth Joel': 'hl', 'Patrick Lorena': 'ka', 'Edgar Bob': 'rb', 'Alexandra Betty': 'ay',
           'Paul Liz': 'lz', 'Sheila Alberto': 'ao'}
ll_q = {p: f'Take the last letters of the words in "{p}" and concatenate them.' for p in ll_pairs}


def exact(table, question, response, gold, auto, printed):
    add(table, TASK, question, response, [gold], [], auto, printed)


ll_orig_resp = {'Beth Joel': '"hel"', 'Patrick Lorena': 'kkna', 'Edgar Bob': '"rb"',
                'Alexandra Betty': 'ara', 'Paul Liz': 'uliz', 'Sheila Alberto': '"ao"'}
ll_orig_label = {'Beth Joel': ('needs_review', 'incorrect'), 'Patrick Lorena': ('needs_review', 'incorrect'),
                 'Edgar Bob': ('correct', 'correct'), 'Alexandra Betty': ('needs_review', 'incorrect'),
                 'Paul Liz': ('needs_review', 'incorrect'), 'Sheila Alberto': ('correct', 'correct')}
for p in ll_pairs:
    auto, printed = ll_orig_label[p]
    exact('last_letter_original', ll_q[p], ll_orig_resp[p], ll_gold[p], auto, printed)

ll_rar_resp = {
    'Beth Joel': 'Can you merge the last letters from each of the words in the name "Beth Joel" together? What would the resultant combination look like? The last letters from the words "Beth" and "Joel" are "h" and "l" respectively. When we merge them together, the resultant combination is "hl".',
    'Patrick Lorena': 'Could you please look at each word in the term "Patrick Lorena," find the last letter of each word, and then join these letters together? Response: The last letters of "Patrick" and "Lorena" are "k" and "a", respectively. When we concatenate them, we get "ka".',
    'Edgar Bob': 'Could you please form a new string or series of characters by joining together the final letters from each word in the phrase "Edgar Bob"? The last letters in the words "Edgar" and "Bob" are "r" and "b", hence when concatenated, it forms "rb".',
    'Alexandra Betty': 'Could you take the final letters that are from both words in "Alexandra Betty", combine these letters, and present them together in one word? The response would be "ay".',
    'Paul Liz': 'Can you take the final letters from each word in the phrase "Paul Liz" and put them together sequentially? Yes, by doing so, you get "ulz".',
    'Sheila Alberto': 'Can you identify the last letter from each word in the name "Sheila Alberto" and then join them together? In the name "Sheila Alberto," the last letters of each word are "a" from Sheila and "o" from Alberto. If you concatenate or combine these letters, you get "ao".',
}
ll_rar_label = {'Beth Joel': ('correct', 'correct'), 'Patrick Lorena': ('correct', 'correct'),
                'Edgar Bob': ('correct', 'correct'), 'Alexandra Betty': ('correct', 'correct'),
                'Paul Liz': ('needs_review', 'incorrect'), 'Sheila Alberto': ('correct', 'correct')}
for p in ll_pairs:
    auto, printed = ll_rar_label[p]
    exact('last_letter_rar', f'"{ll_q[p]}"\n{RAR}', ll_rar_resp[p], ll_gold[p], auto, printed)

ll_two_original = dict(ll_q)
ll_two_original['Edgar Bob'] = (
    'Take the last letters of the words in "Edgar Bob" and concatenate them." Rephrase and expand the question, and respond.')
ll_two_rephrased = {
    'Beth Joel': 'Can you extract the final letters from both "Beth" and "Joel", and then combine them to form a new arrangement of letters, maintaining the original instruction to concatenate them?',
    'Patrick Lorena': "Identify the final letters in each of the words in 'Patrick Lorena'. After you've identified those, combine them all together, in the order they appeared, to form a new word or string of letters.",
    'Edgar Bob': 'Can you identify and extract the final letters in both the words that form "Edgar Bob", and then join them together in the order they appear?',
    'Alexandra Betty': 'To answer the question, you would need to look at the words "Alexandra" and "Betty". Identify the last letter in each of these words. Once you have these last letters, join them together in the order they appear in the original words. The question is asking you to perform these actions.',
    'Paul Liz': "Identify the last letters of each word in the phrase \"Paul Liz\". After identifying, combine these letters together to form a new word or string. This process is known as concatenation. In other words, you will merge the last characters from 'Paul' and 'Liz' without any spaces between them.",
    'Sheila Alberto': "Identify the final letters in each of the words 'Sheila' and 'Alberto'. After recognizing these, join or link them together in the same order they appear. This process is referred to as concatenation.",
}
ll_two_resp = {
    'Beth Joel': 'The last letter of "Beth" is "h" and the last letter of "Joel" is "l". Concatenate them, the result is "hl".',
    'Patrick Lorena': 'The final letters of "Patrick" and "Lorena" are "k" and "a" respectively. When combined together, they form "ka".',
    'Edgar Bob': 'The last letters in the words "Edgar Bob" are "r" and "b". Concatenating them in the order they appear would be "rb".',
    'Alexandra Betty': 'The last letter of "Alexandra" is "a" and the last letter of "Betty" is "y". When these are concatenated, or joined together, the result is "ay".',
    'Paul Liz': 'The last letters of "Paul" and "Liz" are "l" and "z" respectively. Concatenating these letters would form "lz".',
    'Sheila Alberto': 'The last letter of "Sheila" is "a" and the last letter of "Alberto" is "o". So, when concatenated, the resulting output is "ao".',
}
for p in ll_pairs:
    q = f'(original) {ll_two_original[p]}\n(rephrased) {ll_two_rephrased[p]}\n{USE}'
    exact('last_letter_two_step', q, ll_two_resp[p], ll_gold[p], 'correct', 'correct')

# ---------------- Sports ----------------
TASK = 'sports'
sports = [
    ('Javier Zanetti earned a direct kick', 'yes'),
    ('Jayson Tatum nutmegged the defender', 'no'),
    ('Sean Couturier passed the puck in the Stanley Cup', 'yes'),
    ('Tuukka Rask hit a double', 'no'),
    ('Sam Darnold struck out', 'no'),
]
sports_q = {s: f'Is the following sentence plausible? "{s}"' for s, _ in sports}
sports_orig_resp = {
    'Javier Zanetti earned a direct kick': 'No',
    'Jayson Tatum nutmegged the defender': 'Yes',
    'Sean Couturier passed the puck in the Stanley Cup': 'Yes',
    'Tuukka Rask hit a double': 'No',
    'Sam Darnold struck out': 'Yes',
}
sports_orig_label = {
    'Javier Zanetti earned a direct kick': ('incorrect', 'incorrect'),
    'Jayson Tatum nutmegged the defender': ('incorrect', 'incorrect'),
    'Sean Couturier passed the puck in the Stanley Cup': ('correct', 'correct'),
    'Tuukka Rask hit a double': ('correct', 'correct'),
    'Sam Darnold struck out': ('incorrect', 'incorrect'),
}
for s, gold in sports:
    auto, printed = sports_orig_label[s]
    yes_no('sports_original', sports_q[s] + YN, sports_orig_resp[s], gold, auto, printed)

sports_rar_resp = {
    'Javier Zanetti earned a direct kick': '"Is it plausible or possible that Javier Zanetti received a direct kick during a soccer game?" Yes, it is plausible.',
    'Jayson Tatum nutmegged the defender': "Could it be possible that Jayson Tatum managed to play a nutmeg move on a defender during a basketball game? Yes, it's plausible as nutmegging is a commonly used trick in basketball and Jayson Tatum is known for his skills and tricks in the game.",
    'Sean Couturier passed the puck in the Stanley Cup': 'Is it possible for the statement "Sean Couturier maradona\'d the defender" to make sense or be meaningful?  In context of sports language, particularly soccer, the term "maradona\'d" could be used to describe a soccer player performing a maneuver similar to that of Diego Maradona, a renowned soccer player. Sean Couturier is a professional ice hockey player, and although the sports are different, it is plausible that he could carry out a maneuver in hockey analogous to one performed by Maradona in soccer, assuming "maradona\'d" means he skillfully bypassed or tricked the defender in some way. So, yes, the sentence could be plausible.',
    'Tuukka Rask hit a double': 'Is it possible that Tuukka Rask, a professional ice hockey player, could have hit a double in a game? No, Tuukka Rask is a professional ice hockey goaltender for the Boston Bruins. He would not be involved in a sport where he would hit a double, such as baseball. The phrase "hitting a double" isn\'t applicable to ice hockey, making the sentence implausible.',
    'Sam Darnold struck out': 'Is it reasonable or believable to say "Sam Darnold struck out"? No, it\'s not plausible because Sam Darnold is a known professional football player, and the term "struck out" is used in baseball, not football.',
}
sports_rar_label = {
    'Javier Zanetti earned a direct kick': ('correct', 'correct'),
    'Jayson Tatum nutmegged the defender': ('incorrect', 'incorrect'),
    'Sean Couturier passed the puck in the Stanley Cup': ('correct', 'correct'),
    'Tuukka Rask hit a double': ('correct', 'correct'),
    'Sam Darnold struck out': ('correct', 'correct'),
}
for s, gold in sports:
    auto, printed = sports_rar_label[s]
    q = f'"{sports_q[s]}"\n{RAR}{YN}'
    yes_no('sports_rar', q, sports_rar_resp[s], gold, auto, printed)

sports_two_rephrased = {
    'Javier Zanetti earned a direct kick': 'Is it believable or possible that Javier Zanetti secured a direct free kick in a match?',
    'Jayson Tatum nutmegged the defender': "Is it believable that Jayson Tatum, a professional basketball player, could have performed a move where he passed the ball through a defender's legs, also known as a 'nutmeg'?",
    'Sean Couturier passed the puck in the Stanley Cup': 'Could it be possible that Sean Couturier passed the puck during a game in the Stanley Cup tournament?',
    'Tuukka Rask hit a double': 'Is it feasible that Tuukka Rask, presumably known for a non-baseball sport, hit a double in a baseball game?',
    'Sam Darnold struck out': 'Is it believable that Sam Darnold has struck out in a game? Please provide a detailed explanation supporting your answer without omitting any information from the initial question.',
}
sports_two_resp = {
    'Javier Zanetti earned a direct kick': 'Yes',
    'Jayson Tatum nutmegged the defender': 'Yes',
    'Sean Couturier passed the puck in the Stanley Cup': 'Yes',
    'Tuukka Rask hit a double': 'No',
    'Sam Darnold struck out': 'No',
}
sports_two_label = {
    'Javier Zanetti earned a direct kick': ('correct', 'correct'),
    'Jayson Tatum nutmegged the defender': ('incorrect', 'incorrect'),
    'Sean Couturier passed the puck in the Stanley Cup': ('correct', 'correct'),
    'Tuukka Rask hit a double': ('correct', 'correct'),
    'Sam Darnold struck out': ('correct', 'correct'),
}
for s, gold in sports:
    auto, printed = sports_two_label[s]
    q = f'(original) {sports_q[s]}\n(rephrased) {sports_two_rephrased[s]}\n{USE}{YN}'
    yes_no('sports_two_step', q, sports_two_resp[s], gold, auto, printed)

assert len(items) == 63, len(items)
with open('transcripts.fixture.jsonl', 'w') as f:
    for item in items:
        f.write(json.dumps(item, ensure_ascii=False) + '\n')
print(f'wrote {len(items)} transcripts')
