int cwe401_bug_int_buffer_m_main(int c) {
  int *v = malloc(16);
  v[2] = 7;
  return v[2];
}
